// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <optional>
#include <thread>

#include "bithash/user_vector.hpp"
#include "bithash/vectors.hpp"

namespace bithash {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

struct CaseOutcome {
  std::size_t rank = 0;
  std::uint64_t comparisons = 0;
  double density = 0;
  double vectorize_sec = 0;
  double score_sec = 0;
};

std::vector<NgramFeature> features_of(const std::string& title, const TextOptions& text) {
  if (text.normalize) return extract_ngrams(normalize(title), text.ngram);
  return extract_ngrams(title, text.ngram);
}

template <typename V>
V vectorize(const std::string& title, const MethodSpec& spec) {
  const auto features = features_of(title, spec.text);
  if constexpr (std::is_same_v<V, BitVector>) {
    return build_bit_vector(features, spec.hash);
  } else {
    return build_float_vector(features, spec.hash);
  }
}

template <typename V>
V combine(std::span<const V> vectors) {
  if constexpr (std::is_same_v<V, BitVector>) {
    return combine_bits(vectors);
  } else {
    return combine_float(vectors);
  }
}

template <typename V>
CaseOutcome evaluate_case(const EvalCase& c, const MethodSpec& spec) {
  CaseOutcome out;
  const auto t0 = Clock::now();
  std::vector<V> history;
  history.reserve(c.history.viewed.size());
  for (const auto& item : c.history.viewed) history.push_back(vectorize<V>(item.title, spec));
  std::vector<V> candidates;
  candidates.reserve(c.recall.candidates.size());
  for (const auto& item : c.recall.candidates) candidates.push_back(vectorize<V>(item.title, spec));
  const auto t1 = Clock::now();

  Scores scores;
  std::optional<V> user;
  if (spec.strategy == Strategy::kUserVector) {
    user.emplace(combine<V>(history));
    scores = score_user_vector(*user, candidates, spec.kernel);
  } else {
    scores = score_pairwise(std::span<const V>(history), std::span<const V>(candidates), spec.kernel);
  }
  const auto ranked = rank(scores.values, c.recall);
  out.rank = purchased_rank(ranked, c.recall);
  const auto t2 = Clock::now();

  // Saturation diagnostic; for pairwise the combined vector is built here,
  // outside the timed region.
  out.density = user ? density(*user) : density(combine<V>(history));
  out.comparisons = scores.comparisons;
  out.vectorize_sec = seconds(t1 - t0);
  out.score_sec = seconds(t2 - t1);
  return out;
}

CaseOutcome evaluate_case(const EvalCase& c, const MethodSpec& spec) {
  return spec.element == ElementType::kBit ? evaluate_case<BitVector>(c, spec)
                                           : evaluate_case<FeatureVector>(c, spec);
}

void validate_case(const EvalCase& c, std::size_t index) {
  if (c.history.viewed.empty()) {
    throw std::invalid_argument("case " + std::to_string(index) + ": empty history");
  }
  try {
    validate(c.recall);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("case " + std::to_string(index) + ": " + e.what());
  }
  for (const auto& v : c.history.viewed) {
    if (v.id == c.recall.purchased) {
      throw std::invalid_argument("case " + std::to_string(index) +
                                  ": purchased item appears in history");
    }
  }
}

std::vector<CaseOutcome> evaluate_all(std::span<const EvalCase> cases, const MethodSpec& spec,
                                      const RunOptions& options) {
  std::vector<CaseOutcome> outcomes(cases.size());
  unsigned workers = 1;
  if (options.parallel) {
    workers = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cases.size()));
  }
  if (workers <= 1) {
    for (std::size_t i = 0; i < cases.size(); ++i) outcomes[i] = evaluate_case(cases[i], spec);
    return outcomes;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < cases.size(); i += workers) {
            outcomes[i] = evaluate_case(cases[i], spec);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

}  // namespace

std::string MethodSpec::label() const {
  std::string s = strategy == Strategy::kPairwise ? "pairwise" : "user-vec";
  s += element == ElementType::kBit ? " 1-bit" : " float";
  if (element == ElementType::kBit && kernel != Kernel::kOchiai) {
    s += "/";
    s += to_string(kernel);
  }
  return s;
}

void validate(const MethodSpec& spec) {
  const bool float_kernel = is_float_kernel(spec.kernel);
  if (spec.element == ElementType::kFloat && !float_kernel) {
    throw ConfigError("method " + spec.label() + ": kernel " + std::string(to_string(spec.kernel)) +
                      " requires 1-bit vectors");
  }
  if (spec.element == ElementType::kBit && float_kernel) {
    throw ConfigError("method " + spec.label() + ": kernel cosine requires float vectors");
  }
  if (spec.element == ElementType::kBit && spec.hash.sign_hash) {
    throw ConfigError("method " + spec.label() + ": sign hashing is not supported for 1-bit vectors");
  }
  if (spec.hash.dim == 0) throw ConfigError("method " + spec.label() + ": dim must be >= 1");
  if (spec.text.ngram == 0) throw ConfigError("method " + spec.label() + ": n-gram length must be >= 1");
}

double topk_accuracy(std::span<const std::size_t> ranks, std::size_t k) {
  if (k == 0) throw std::invalid_argument("topk_accuracy: k must be >= 1");
  if (ranks.empty()) return 0.0;
  const auto hits = std::count_if(ranks.begin(), ranks.end(),
                                  [k](std::size_t r) { return r != 0 && r <= k; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

EvalReport run_experiment(std::span<const EvalCase> cases, std::span<const MethodSpec> methods,
                          const RunOptions& options) {
  for (const auto& m : methods) validate(m);
  if (methods.empty()) throw std::invalid_argument("run_experiment: no methods");
  if (cases.empty()) throw std::invalid_argument("run_experiment: no cases");
  for (std::size_t i = 0; i < cases.size(); ++i) validate_case(cases[i], i);

  EvalReport report;
  for (const auto& spec : methods) {
    const auto outcomes = evaluate_all(cases, spec, options);
    MethodResult row;
    row.label = spec.label();
    row.spec = spec;
    row.cases = cases.size();
    row.size_bytes = payload_bytes(spec.element, spec.hash.dim);
    double comparisons = 0;
    double density_sum = 0;
    for (const auto& o : outcomes) {
      row.ranks.push_back(o.rank);
      row.densities.push_back(o.density);
      row.vectorize_sec += o.vectorize_sec;
      row.time_sec += o.score_sec;
      comparisons += static_cast<double>(o.comparisons);
      density_sum += o.density;
      row.max_density = std::max(row.max_density, o.density);
    }
    const auto n = static_cast<double>(cases.size());
    row.mean_comparisons = comparisons / n;
    row.mean_density = density_sum / n;
    row.top1 = topk_accuracy(row.ranks, 1);
    row.top5 = topk_accuracy(row.ranks, 5);
    row.top10 = topk_accuracy(row.ranks, 10);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace bithash
