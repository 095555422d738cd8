// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include <doctest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(BITHASH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("bithash_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("cli vectorize") {
  TempDir dir;
  {
    std::ofstream f(dir / "titles.tsv");
    f << "a\tSony 1-873-858-11 Video/HDMI Board\nb\tBose IE2 earphones\nc\tx\n";
  }
  REQUIRE(run("vectorize " + (dir / "titles.tsv") + " --out " + (dir / "v.bin")) == 0);
  const std::string bin = slurp(dir / "v.bin");
  CHECK(bin.size() == 3 * (9 + 1000));
  CHECK(bin.substr(0, 4) == "BHV1");
  CHECK(count_lines(slurp(dir / "v.bin.manifest.jsonl")) == 3);

  REQUIRE(run("vectorize " + (dir / "titles.tsv") + " --out " + (dir / "w.bin")) == 0);
  CHECK(slurp(dir / "w.bin") == bin);

  REQUIRE(run("vectorize " + (dir / "titles.tsv") + " --type float --dim 1000 --out " +
              (dir / "f.bin")) == 0);
  CHECK(slurp(dir / "f.bin").size() == 3 * (9 + 4000));

  {
    std::ofstream f(dir / "dup.tsv");
    f << "a\tone\na\ttwo\n";
  }
  CHECK(run("vectorize " + (dir / "dup.tsv") + " --out " + (dir / "d.bin")) == 3);
  CHECK_FALSE(fs::exists(dir / "d.bin"));
  CHECK(run("vectorize " + (dir / "titles.tsv") + " --type nibble --out " + (dir / "e.bin")) == 2);
  CHECK(run("vectorize " + (dir / "missing.tsv") + " --out " + (dir / "e.bin")) == 4);
}

TEST_CASE("cli evaluate on synthetic data") {
  TempDir dir;
  const std::string common = "evaluate --synthetic --users 40 --seed 7 --format csv --out ";
  REQUIRE(run(common + (dir / "r.csv")) == 0);
  const std::string csv = slurp(dir / "r.csv");
  CHECK(csv.rfind("type,dim,size_bytes,time_sec,top1,top5,top10,mean_comparisons,mean_density\n", 0) ==
        0);
  CHECK(count_lines(csv) == 1 + 8);
  CHECK(fs::exists(dir / "r.csv.meta.json"));

  REQUIRE(run("evaluate --synthetic --users 40 --seed 7 --methods pairwise-bit --dim 64 --out " +
              (dir / "both")) == 0);
  CHECK(count_lines(slurp(dir / "both.csv")) == 2);
  CHECK(slurp(dir / "both.md").find("pairwise 1-bit") != std::string::npos);

  CHECK(run("evaluate --synthetic --users 10 --metric cosine --out " + (dir / "x")) == 2);
  CHECK(run("evaluate --synthetic --users 10 --dim 0 --out " + (dir / "x")) == 2);
  CHECK(run("evaluate --synthetic --users 10 --methods bogus --out " + (dir / "x")) == 2);
}

TEST_CASE("cli evaluate on files") {
  TempDir dir;
  REQUIRE(run("synth --users 30 --seed 3 --out " + (dir / "data")) == 0);
  CHECK(fs::exists(dir / "data/items.jsonl"));
  CHECK(fs::exists(dir / "data/events.jsonl"));
  CHECK(fs::exists(dir / "data/truth.jsonl"));

  REQUIRE(run("evaluate --items " + (dir / "data/items.jsonl") + " --events " +
              (dir / "data/events.jsonl") + " --format csv --out " + (dir / "r.csv")) == 0);
  CHECK(count_lines(slurp(dir / "r.csv")) == 9);

  CHECK(run("evaluate --items " + (dir / "data/items.jsonl") + " --events " +
            (dir / "data/nope.jsonl") + " --format csv --out " + (dir / "m.csv")) == 4);
  CHECK_FALSE(fs::exists(dir / "m.csv"));
  CHECK_FALSE(fs::exists(dir / "m.csv.tmp"));

  {
    std::ofstream f(dir / "empty.jsonl");
  }
  CHECK(run("evaluate --items " + (dir / "data/items.jsonl") + " --events " +
            (dir / "empty.jsonl") + " --format csv --out " + (dir / "z.csv")) == 3);
  CHECK_FALSE(fs::exists(dir / "z.csv"));
}

TEST_CASE("cli bench and usage errors") {
  TempDir dir;
  REQUIRE(run("bench --dim 64 --corpus 64 --min-time 0.01 --format csv --out " + (dir / "b.csv")) == 0);
  CHECK(count_lines(slurp(dir / "b.csv")) == 3);
  CHECK(run("bench --corpus 8") == 2);
  CHECK(run("") != 0);
  CHECK(run("frobnicate") == 2);
}
