// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
//
// bithash: vectorize titles, generate synthetic clickstreams, run the
// purchase-prediction evaluation and time the kernels.
//
// Exit codes: 0 success, 1 internal error, 2 configuration, 3 data, 4 I/O.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bithash/bench.hpp"
#include "bithash/dataset.hpp"
#include "bithash/experiment.hpp"
#include "bithash/report.hpp"
#include "bithash/serialize.hpp"
#include "bithash/synthetic.hpp"
#include "bithash/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bithash;

namespace {

enum ExitCode : int { kOk = 0, kInternal = 1, kConfigFailure = 2, kDataFailure = 3, kIoFailure = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Output files are written under a temporary name and renamed on commit;
/// anything not committed is removed on destruction.
class OutputSet {
 public:
  OutputSet() = default;
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& [tmp, final_path] : files_) fs::remove(tmp, ec);
  }

  std::ofstream open(const fs::path& path) {
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
    }
    fs::path tmp = path;
    tmp += ".tmp";
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    files_.emplace_back(tmp, path);
    return f;
  }

  void commit() {
    for (const auto& [tmp, final_path] : files_) {
      std::error_code ec;
      fs::rename(tmp, final_path, ec);
      if (ec) throw IoError("cannot move " + tmp.string() + " to " + final_path.string() + ": " + ec.message());
    }
    committed_ = true;
  }

 private:
  std::vector<std::pair<fs::path, fs::path>> files_;
  bool committed_ = false;
};

void check_written(std::ostream& out, const std::string& what) {
  out.flush();
  if (!out) throw IoError("write failure on " + what);
}

// ---------------------------------------------------------------------------
// Method selection

struct MethodName {
  const char* name;
  Strategy strategy;
  ElementType element;
};

constexpr MethodName kMethodNames[] = {
    {"pairwise-float", Strategy::kPairwise, ElementType::kFloat},
    {"pairwise-bit", Strategy::kPairwise, ElementType::kBit},
    {"uservec-float", Strategy::kUserVector, ElementType::kFloat},
    {"uservec-bit", Strategy::kUserVector, ElementType::kBit},
};

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) out.push_back(tok);
    }
  }
  return out;
}

// Methods x dims, method-major.
std::vector<MethodSpec> resolve_methods(const std::vector<std::string>& names,
                                        const std::vector<std::size_t>& dims, Kernel bit_kernel,
                                        const HashConfig& base_hash, const TextOptions& text) {
  std::vector<std::string> expanded;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& m : kMethodNames) expanded.emplace_back(m.name);
    } else {
      expanded.push_back(n);
    }
  }
  std::vector<MethodSpec> specs;
  for (const auto& n : expanded) {
    const MethodName* found = nullptr;
    for (const auto& m : kMethodNames) {
      if (n == m.name) found = &m;
    }
    if (!found) {
      throw ConfigError("unknown method '" + n +
                        "' (expected pairwise-float, pairwise-bit, uservec-float, uservec-bit or all)");
    }
    for (std::size_t dim : dims) {
      MethodSpec s;
      s.strategy = found->strategy;
      s.element = found->element;
      s.kernel = found->element == ElementType::kFloat ? Kernel::kCosine : bit_kernel;
      s.hash = base_hash;
      s.hash.dim = dim;
      if (s.element == ElementType::kBit) s.hash.sign_hash = false;
      s.text = text;
      validate(s);
      specs.push_back(s);
    }
  }
  if (specs.empty()) throw ConfigError("no methods selected");
  return specs;
}

// ---------------------------------------------------------------------------
// Shared options

struct SynthFlags {
  SynthConfig config;
  void add(CLI::App* app) {
    app->add_option("--users", config.users, "Users (one case each)")->capture_default_str();
    app->add_option("--categories", config.categories, "Item categories")->capture_default_str();
    app->add_option("--vocabulary", config.vocabulary, "Distinct words per category")->capture_default_str();
    app->add_option("--titles-per-category", config.titles_per_category, "Catalog titles per category")
        ->capture_default_str();
    app->add_option("--history-median", config.history_median, "Median viewed items per user")
        ->capture_default_str();
    app->add_option("--history-sigma", config.history_sigma, "Log-normal spread of history length")
        ->capture_default_str();
    app->add_option("--history-max", config.history_max, "Longest history")->capture_default_str();
    app->add_option("--distractors", config.distractors, "Distractors per recall set")->capture_default_str();
    app->add_option("--signal", config.signal, "Probability a viewed item shares the purchased product")
        ->capture_default_str();
    app->add_option("--attributes", config.attribute_tokens, "Attribute tokens per title")->capture_default_str();
    app->add_option("--noise", config.noise_tokens, "Maximum noise tokens per title")->capture_default_str();
  }
};

json to_json(const SynthConfig& c) {
  return {{"users", c.users},
          {"categories", c.categories},
          {"vocabulary", c.vocabulary},
          {"titles_per_category", c.titles_per_category},
          {"history_median", c.history_median},
          {"history_sigma", c.history_sigma},
          {"history_max", c.history_max},
          {"distractors", c.distractors},
          {"signal", c.signal},
          {"attribute_tokens", c.attribute_tokens},
          {"noise_tokens", c.noise_tokens},
          {"seed", c.seed}};
}

// ---------------------------------------------------------------------------
// vectorize

struct VectorizeArgs {
  std::string input;
  std::string out = "vectors.bin";
  std::string type = "bit";
  std::size_t dim = 8000;
  std::size_t ngram = kDefaultNgram;
  std::uint64_t hash_seed = 0;
  bool sign_hash = false;
  bool no_normalize = false;
};

// JSONL items ({"item_id", "title"}) or "item_id<TAB>title" lines.
std::vector<std::pair<std::string, std::string>> read_titles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open titles file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '{') {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("item_id") || !j.contains("title") || !j["item_id"].is_string() ||
          !j["title"].is_string()) {
        throw DataError(path + ":" + std::to_string(lineno) + ": malformed item line");
      }
      out.emplace_back(j["item_id"].get<std::string>(), j["title"].get<std::string>());
    } else {
      const auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0) {
        throw DataError(path + ":" + std::to_string(lineno) + ": expected item_id<TAB>title");
      }
      out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
  }
  if (in.bad()) throw IoError("error reading " + path);
  return out;
}

int cmd_vectorize(const VectorizeArgs& a) {
  if (a.type != "bit" && a.type != "float") throw ConfigError("--type must be bit or float");
  HashConfig hash{a.dim, a.hash_seed, a.sign_hash};
  validate(hash);
  if (a.type == "bit" && a.sign_hash) throw ConfigError("--sign-hash applies to float vectors only");
  if (a.ngram == 0) throw ConfigError("--ngram must be >= 1");

  const auto titles = read_titles(a.input);
  std::map<std::string, std::size_t> seen;
  for (const auto& [id, title] : titles) ++seen[id];
  std::string dupes;
  for (const auto& [id, count] : seen) {
    if (count > 1) dupes += (dupes.empty() ? "" : ", ") + id;
  }
  if (!dupes.empty()) throw DataError("duplicate item ids: " + dupes);

  OutputSet outputs;
  std::ofstream vec = outputs.open(a.out);
  std::ofstream manifest = outputs.open(a.out + ".manifest.jsonl");
  std::uint64_t offset = 0;
  for (const auto& [id, title] : titles) {
    const auto features = extract_ngrams(a.no_normalize ? title : normalize(title), a.ngram);
    const auto bytes = a.type == "bit" ? serialize(build_bit_vector(features, hash))
                                       : serialize(build_float_vector(features, hash));
    vec.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    manifest << json{{"item_id", id}, {"offset", offset}, {"bytes", bytes.size()}}.dump() << '\n';
    offset += bytes.size();
  }
  check_written(vec, a.out);
  check_written(manifest, a.out + ".manifest.jsonl");
  vec.close();
  manifest.close();
  outputs.commit();
  std::cerr << "wrote " << titles.size() << " vectors to " << a.out << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string items;
  std::string events;
  bool synthetic = false;
  SynthFlags synth;
  std::vector<std::string> methods = {"all"};
  std::string metric = "ochiai";
  std::vector<std::size_t> dims = {8000, 1000};
  std::size_t ngram = kDefaultNgram;
  std::uint64_t seed = 0;
  std::uint64_t hash_seed = 0;
  bool sign_hash = false;
  bool no_normalize = false;
  bool include_purchase_session = false;
  std::size_t max_distractors = 100;
  std::string format = "both";
  std::string out = "report";
  bool parallel = false;
  unsigned threads = 0;
};

int cmd_evaluate(EvaluateArgs a) {
  if (a.format != "csv" && a.format != "table" && a.format != "both") {
    throw ConfigError("--format must be csv, table or both");
  }
  const auto kernel = parse_kernel(a.metric);
  if (!kernel || is_float_kernel(*kernel)) {
    throw ConfigError("--metric must be ochiai, hamming or jaccard");
  }
  if (a.dims.empty()) throw ConfigError("--dim needs at least one value");
  if (!a.synthetic && (a.items.empty() || a.events.empty())) {
    throw ConfigError("give --items and --events, or --synthetic");
  }
  if (a.synthetic && (!a.items.empty() || !a.events.empty())) {
    throw ConfigError("--synthetic cannot be combined with --items/--events");
  }

  const HashConfig hash{a.dims.front(), a.hash_seed, a.sign_hash};
  const TextOptions text{a.ngram, !a.no_normalize};
  const auto methods = resolve_methods(split_list(a.methods), a.dims, *kernel, hash, text);

  json config = {{"version", kVersion},
                 {"subcommand", "evaluate"},
                 {"methods", json::array()},
                 {"metric", a.metric},
                 {"dims", a.dims},
                 {"ngram", a.ngram},
                 {"normalize", !a.no_normalize},
                 {"seed", a.seed},
                 {"hash_seed", a.hash_seed},
                 {"sign_hash", a.sign_hash},
                 {"parallel", a.parallel},
                 {"threads", a.threads},
                 {"format", a.format},
                 {"out", a.out}};
  for (const auto& m : methods) config["methods"].push_back(m.label() + "@" + std::to_string(m.hash.dim));

  std::vector<EvalCase> cases;
  if (a.synthetic) {
    a.synth.config.seed = a.seed;
    validate(a.synth.config);
    config["data"] = {{"source", "synthetic"}, {"synth", to_json(a.synth.config)}};
    cases = generate_synthetic(a.synth.config).eval_cases();
  } else {
    for (const auto& path : {a.items, a.events}) {
      std::ifstream probe(path);
      if (!probe) throw IoError("cannot open " + path);
    }
    LoadOptions lo;
    lo.seed = a.seed;
    lo.max_distractors = a.max_distractors;
    lo.prior_sessions_only = !a.include_purchase_session;
    config["data"] = {{"source", "jsonl"},
                      {"items", a.items},
                      {"events", a.events},
                      {"max_distractors", a.max_distractors},
                      {"prior_sessions_only", lo.prior_sessions_only}};
    auto loaded = load_dataset(fs::path(a.items), fs::path(a.events), lo);
    for (const auto& w : summarize(loaded.stats)) std::cerr << "warning: " << w << '\n';
    json sizes = json::object();
    for (const auto& [m, n] : loaded.stats.recall_sizes) sizes[std::to_string(m)] = n;
    config["data"]["recall_sizes"] = sizes;
    cases = std::move(loaded.cases);
  }
  config["cases"] = cases.size();

  RunOptions ro{a.parallel, a.threads};
  const EvalReport report = run_experiment(cases, methods, ro);

  OutputSet outputs;
  const bool both = a.format == "both";
  const std::string csv_path = both ? a.out + ".csv" : a.out;
  const std::string table_path = both ? a.out + ".md" : a.out;
  if (a.format != "table") {
    auto f = outputs.open(csv_path);
    write_csv(f, report);
    check_written(f, csv_path);
    auto meta = outputs.open(csv_path + ".meta.json");
    meta << config.dump(2) << '\n';
    check_written(meta, csv_path + ".meta.json");
  }
  if (a.format != "csv") {
    auto f = outputs.open(table_path);
    write_table(f, report, {"bithash " + std::string(kVersion), "config: " + config.dump()});
    check_written(f, table_path);
  }
  outputs.commit();
  write_table(std::cout, report);
  return kOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<std::size_t> dims = {8000, 1000, 64};
  std::size_t corpus = 256;
  double min_time = 0.25;
  bool zero = false;
  std::uint64_t seed = 0;
  std::string format = "table";
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  if (a.format != "table" && a.format != "csv") throw ConfigError("--format must be table or csv");
  BenchConfig bc;
  bc.dims = a.dims;
  bc.corpus = a.corpus;
  bc.min_seconds = a.min_time;
  bc.zero_vectors = a.zero;
  bc.seed = a.seed;
  const auto rows = run_bench(bc);
  auto emit = [&](std::ostream& os) {
    if (a.format == "csv") {
      write_bench_csv(os, rows);
    } else {
      os << "<!-- bithash " << kVersion << " bench seed=" << a.seed << " corpus=" << a.corpus
         << (a.zero ? " zero-vectors" : "") << " -->\n";
      write_bench_table(os, rows);
    }
  };
  if (a.out.empty()) {
    emit(std::cout);
    return kOk;
  }
  OutputSet outputs;
  auto f = outputs.open(a.out);
  emit(f);
  check_written(f, a.out);
  f.close();
  outputs.commit();
  return kOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  SynthFlags synth;
  std::uint64_t seed = 0;
  std::string out = "synthetic";
};

int cmd_synth(SynthArgs a) {
  a.synth.config.seed = a.seed;
  const auto data = generate_synthetic(a.synth.config);
  try {
    write_synthetic(data, a.out);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  std::ofstream meta(fs::path(a.out) / "config.json");
  meta << json{{"version", kVersion}, {"subcommand", "synth"}, {"synth", to_json(a.synth.config)}}.dump(2)
       << '\n';
  check_written(meta, "config.json");
  std::cerr << "wrote " << data.cases.size() << " users, " << data.items.size() << " items to " << a.out
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bitwise feature hashing for short-string similarity and personalized ranking"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  VectorizeArgs va;
  auto* vectorize = app.add_subcommand("vectorize", "Hash titles into serialized vectors");
  vectorize->add_option("input", va.input, "Titles file (items JSONL or id<TAB>title)")->required();
  vectorize->add_option("--out", va.out, "Vector file; manifest goes to <out>.manifest.jsonl")
      ->capture_default_str();
  vectorize->add_option("--type", va.type, "bit or float")->capture_default_str();
  vectorize->add_option("--dim", va.dim, "Vector dimension")->capture_default_str();
  vectorize->add_option("--ngram", va.ngram, "Character n-gram length")->capture_default_str();
  vectorize->add_option("--hash-seed,--seed", va.hash_seed, "Feature hash seed")->capture_default_str();
  vectorize->add_flag("--sign-hash", va.sign_hash, "Signed increments (float only)");
  vectorize->add_flag("--no-normalize", va.no_normalize, "Hash titles as given");

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "Run the purchase-prediction evaluation");
  evaluate->add_option("--items", ea.items, "items.jsonl");
  evaluate->add_option("--events", ea.events, "events.jsonl");
  evaluate->add_flag("--synthetic", ea.synthetic, "Generate a synthetic dataset instead");
  ea.synth.add(evaluate);
  evaluate->add_option("--methods", ea.methods, "Comma list: pairwise-float,pairwise-bit,uservec-float,uservec-bit,all")
      ->capture_default_str();
  evaluate->add_option("--metric", ea.metric, "Bit kernel: ochiai, hamming or jaccard")->capture_default_str();
  evaluate->add_option("--dim", ea.dims, "Dimensions (repeat or comma list)")->delimiter(',')->capture_default_str();
  evaluate->add_option("--ngram", ea.ngram, "Character n-gram length")->capture_default_str();
  evaluate->add_option("--seed", ea.seed, "Seed for data generation and recall sampling")->capture_default_str();
  evaluate->add_option("--hash-seed", ea.hash_seed, "Feature hash seed")->capture_default_str();
  evaluate->add_flag("--sign-hash", ea.sign_hash, "Signed increments for float methods");
  evaluate->add_flag("--no-normalize", ea.no_normalize, "Hash titles as given");
  evaluate->add_flag("--include-purchase-session", ea.include_purchase_session,
                     "Count views from the purchase session as history");
  evaluate->add_option("--max-distractors", ea.max_distractors, "Distractors per loaded recall set")
      ->capture_default_str();
  evaluate->add_option("--format", ea.format, "csv, table or both")->capture_default_str();
  evaluate->add_option("--out", ea.out, "Output path (both: <out>.csv and <out>.md)")->capture_default_str();
  evaluate->add_flag("--parallel", ea.parallel, "Spread cases over threads");
  evaluate->add_option("--threads", ea.threads, "Worker threads for --parallel (0: all cores)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time bit kernels against float kernels");
  bench->add_option("--dim", ba.dims, "Dimensions")->delimiter(',')->capture_default_str();
  bench->add_option("--corpus", ba.corpus, "Random vectors per dimension")->capture_default_str();
  bench->add_option("--min-time", ba.min_time, "Seconds per measurement")->capture_default_str();
  bench->add_flag("--zero", ba.zero, "All-zero vectors");
  bench->add_option("--seed", ba.seed, "Corpus seed")->capture_default_str();
  bench->add_option("--format", ba.format, "table or csv")->capture_default_str();
  bench->add_option("--out", ba.out, "Output file (default stdout)");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Write a synthetic dataset as JSONL");
  sa.synth.add(synth);
  synth->add_option("--seed", sa.seed, "Generator seed")->capture_default_str();
  synth->add_option("--out", sa.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigFailure;
  }

  try {
    if (*vectorize) return cmd_vectorize(va);
    if (*evaluate) return cmd_evaluate(ea);
    if (*bench) return cmd_bench(ba);
    if (*synth) return cmd_synth(sa);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
