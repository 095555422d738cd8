// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bithash/dataset.hpp"
#include "bithash/hashing.hpp"
#include "bithash/serialize.hpp"
#include "bithash/similarity.hpp"
#include "bithash/text_features.hpp"

namespace bithash {

/// A MethodSpec that cannot run, detected before any work starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Strategy { kPairwise, kUserVector };

struct TextOptions {
  std::size_t ngram = kDefaultNgram;
  bool normalize = true;
};

struct MethodSpec {
  Strategy strategy = Strategy::kPairwise;
  ElementType element = ElementType::kBit;
  Kernel kernel = Kernel::kOchiai;
  HashConfig hash;
  TextOptions text;

  /// "pairwise float", "user-vec 1-bit", ...; non-default bit kernels are
  /// appended, e.g. "pairwise 1-bit/hamming".
  std::string label() const;
};

/// Throws ConfigError on a kernel/element mismatch, sign hashing on bits,
/// dim == 0 or ngram == 0.
void validate(const MethodSpec& spec);

struct MethodResult {
  std::string label;
  MethodSpec spec;
  std::size_t cases = 0;
  std::size_t size_bytes = 0;
  /// Seconds spent turning titles into vectors.
  double vectorize_sec = 0;
  /// Seconds spent combining, scoring and ranking.
  double time_sec = 0;
  double top1 = 0;
  double top5 = 0;
  double top10 = 0;
  double mean_comparisons = 0;
  /// Density of the combined history vector (fraction of nonzero elements).
  double mean_density = 0;
  double max_density = 0;
  /// Purchased-item rank per case, input order.
  std::vector<std::size_t> ranks;
  /// History-vector density per case, input order.
  std::vector<double> densities;
};

struct EvalReport {
  std::vector<MethodResult> rows;
};

struct RunOptions {
  /// Spread cases over worker threads. Aggregates are unchanged; phase
  /// timings become summed thread time.
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Fraction of cases whose purchased item ranks within the top k. A rank of
/// 0 (absent) never counts. Throws std::invalid_argument when k == 0.
double topk_accuracy(std::span<const std::size_t> ranks, std::size_t k);

/// Runs every method over every case. Rows follow the method order.
/// Throws ConfigError before doing any work if a method is invalid, and
/// std::invalid_argument on empty inputs.
EvalReport run_experiment(std::span<const EvalCase> cases, std::span<const MethodSpec> methods,
                          const RunOptions& options = {});

}  // namespace bithash
