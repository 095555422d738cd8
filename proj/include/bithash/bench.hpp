// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bithash {

struct BenchConfig {
  std::vector<std::size_t> dims = {8000, 1000, 64};
  /// Random vectors per corpus.
  std::size_t corpus = 256;
  /// Set bits per vector, about one short title's worth of n-grams.
  std::size_t bits_per_vector = 70;
  /// Vectors per combine call.
  std::size_t combine_width = 44;
  /// Minimum measured time per operation.
  double min_seconds = 0.25;
  /// Use all-zero vectors instead of random ones.
  bool zero_vectors = false;
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::size_t dim = 0;
  std::string operation;  // "similarity" or "combine"
  std::string bit_op;     // "ochiai" / "combine_bits"
  std::string float_op;   // "cosine" / "combine_float"
  double bit_ns = 0;      // per call
  double float_ns = 0;
  double speedup = 0;     // float_ns / bit_ns
  /// Sum of kernel results, for a correctness cross-check. For similarity
  /// the two are equal up to rounding.
  double bit_checksum = 0;
  double float_checksum = 0;
};

/// Times ochiai vs cosine and combine_bits vs combine_float on the same
/// randomized corpus, as bit vectors and their 0/1 float images.
std::vector<BenchRow> run_bench(const BenchConfig& config);

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace bithash
