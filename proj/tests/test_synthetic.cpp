// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bithash/synthetic.hpp"
#include "bithash/text_features.hpp"

using namespace bithash;

namespace {

SynthConfig small(double signal, std::uint64_t seed = 1) {
  SynthConfig c;
  c.users = 60;
  c.categories = 5;
  c.titles_per_category = 150;
  c.signal = signal;
  c.seed = seed;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// First two tokens of a synthetic title are its product phrase.
std::string phrase(const std::string& title) {
  const auto first = title.find(' ');
  const auto second = title.find(' ', first + 1);
  return title.substr(0, second);
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(SynthConfig{}));
  SynthConfig c;
  c.signal = 1.5;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = SynthConfig{};
  c.users = 0;
  CHECK_THROWS_AS(generate_synthetic(c), std::invalid_argument);
  c = SynthConfig{};
  c.distractors = 101;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("cases are well formed") {
  const auto data = generate_synthetic(small(0.5));
  REQUIRE(data.cases.size() == 60);
  std::set<std::string> ids;
  for (const auto& it : data.items) {
    CHECK(ids.insert(it.id).second);
    CHECK(decode_utf8(it.title).size() <= 80);
  }
  for (const auto& c : data.cases) {
    CHECK(c.eval.recall.candidates.size() == 101);
    CHECK_NOTHROW(validate(c.eval.recall));
    CHECK(!c.eval.history.viewed.empty());
    CHECK(c.signal.size() == c.eval.history.viewed.size());
    for (const auto& v : c.eval.history.viewed) CHECK(v.id != c.eval.recall.purchased);
  }
}

TEST_CASE("signal flags match shared product phrases") {
  for (double p : {0.0, 1.0, 0.4}) {
    const auto data = generate_synthetic(small(p));
    std::size_t signal = 0, total = 0;
    for (const auto& c : data.cases) {
      const auto& r = c.eval.recall;
      const auto bought = std::find_if(r.candidates.begin(), r.candidates.end(),
                                       [&](const Item& i) { return i.id == r.purchased; });
      const std::string product = phrase(bought->title);
      for (std::size_t i = 0; i < c.signal.size(); ++i) {
        CHECK(c.signal[i] == (phrase(c.eval.history.viewed[i].title) == product));
        signal += c.signal[i];
        ++total;
      }
      // Distractors never carry the purchased product.
      for (const auto& cand : r.candidates) {
        if (cand.id != r.purchased) CHECK(phrase(cand.title) != product);
      }
    }
    if (p == 0.0) CHECK(signal == 0);
    if (p == 1.0) CHECK(signal == total);
    if (p == 0.4) CHECK(std::abs(double(signal) / double(total) - 0.4) < 0.05);
  }
}

TEST_CASE("history lengths center on the configured median") {
  SynthConfig c = small(0.5);
  c.users = 2001;
  const auto data = generate_synthetic(c);
  std::vector<std::size_t> lengths;
  for (const auto& k : data.cases) lengths.push_back(k.eval.history.viewed.size());
  std::nth_element(lengths.begin(), lengths.begin() + 1000, lengths.end());
  CHECK(lengths[1000] >= 40);
  CHECK(lengths[1000] <= 48);
}

TEST_CASE("same seed, same data; different seed, different data") {
  const auto a = generate_synthetic(small(0.5, 7));
  const auto b = generate_synthetic(small(0.5, 7));
  const auto c = generate_synthetic(small(0.5, 8));
  CHECK(a.eval_cases() == b.eval_cases());
  CHECK(a.items == b.items);
  CHECK_FALSE(a.eval_cases() == c.eval_cases());
}

TEST_CASE("written datasets are byte-identical and load back") {
  const auto dir = std::filesystem::temp_directory_path() / "bithash_synth_test";
  std::filesystem::remove_all(dir);
  const auto data = generate_synthetic(small(0.5, 3));
  write_synthetic(data, dir / "one");
  write_synthetic(generate_synthetic(small(0.5, 3)), dir / "two");
  for (const char* f : {"items.jsonl", "events.jsonl", "truth.jsonl"}) {
    CHECK(slurp(dir / "one" / f) == slurp(dir / "two" / f));
  }

  const auto loaded = load_dataset(dir / "one" / "items.jsonl", dir / "one" / "events.jsonl", {});
  REQUIRE(loaded.cases.size() == data.cases.size());
  for (std::size_t i = 0; i < data.cases.size(); ++i) {
    CHECK(loaded.cases[i].history == data.cases[i].eval.history);
    CHECK(loaded.cases[i].recall.purchased == data.cases[i].eval.recall.purchased);
  }
  std::filesystem::remove_all(dir);
}
