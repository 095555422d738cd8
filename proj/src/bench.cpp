// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/bench.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "bithash/random.hpp"
#include "bithash/similarity.hpp"
#include "bithash/user_vector.hpp"
#include "bithash/vectors.hpp"

namespace bithash {

namespace {

using Clock = std::chrono::steady_clock;

// Runs `batch` repeatedly until min_seconds have passed; returns ns per op.
template <typename Batch>
double time_per_op(double min_seconds, std::size_t ops_per_batch, Batch batch) {
  batch();  // warm-up
  std::size_t batches = 0;
  const auto start = Clock::now();
  Clock::duration elapsed{};
  do {
    batch();
    ++batches;
    elapsed = Clock::now() - start;
  } while (std::chrono::duration<double>(elapsed).count() < min_seconds);
  return std::chrono::duration<double, std::nano>(elapsed).count() /
         static_cast<double>(batches * ops_per_batch);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.corpus < 2 || config.combine_width == 0 || config.combine_width > config.corpus) {
    throw std::invalid_argument("bench: need corpus >= 2 and 1 <= combine_width <= corpus");
  }
  Rng rng(config.seed);
  std::vector<BenchRow> rows;
  for (std::size_t dim : config.dims) {
    if (dim == 0) throw std::invalid_argument("bench: dim must be >= 1");
    std::vector<BitVector> bits;
    std::vector<FeatureVector> floats;
    for (std::size_t i = 0; i < config.corpus; ++i) {
      std::vector<std::size_t> idx;
      if (!config.zero_vectors) {
        for (std::size_t k = 0; k < config.bits_per_vector; ++k) idx.push_back(rng.below(dim));
      }
      bits.push_back(BitVector::from_indices(dim, idx));
      floats.push_back(to_feature_vector(bits.back()));
    }
    const std::size_t n = bits.size();

    BenchRow sim{dim, "similarity", "ochiai", "cosine"};
    sim.bit_ns = time_per_op(config.min_seconds, n, [&] {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += ochiai(bits[i], bits[(i + 1) % n]);
      sim.bit_checksum = s;
    });
    sim.float_ns = time_per_op(config.min_seconds, n, [&] {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += cosine(floats[i], floats[(i + 1) % n]);
      sim.float_checksum = s;
    });
    sim.speedup = sim.float_ns / sim.bit_ns;
    rows.push_back(sim);

    const std::size_t w = config.combine_width;
    const std::size_t windows = n / w;
    BenchRow comb{dim, "combine", "combine_bits", "combine_float"};
    comb.bit_ns = time_per_op(config.min_seconds, windows, [&] {
      double s = 0;
      for (std::size_t k = 0; k < windows; ++k) {
        s += static_cast<double>(combine_bits(std::span(bits).subspan(k * w, w)).popcount());
      }
      comb.bit_checksum = s;
    });
    comb.float_ns = time_per_op(config.min_seconds, windows, [&] {
      double s = 0;
      for (std::size_t k = 0; k < windows; ++k) {
        s += density(combine_float(std::span(floats).subspan(k * w, w))) * static_cast<double>(dim);
      }
      comb.float_checksum = s;
    });
    comb.speedup = comb.float_ns / comb.bit_ns;
    rows.push_back(comb);
  }
  return rows;
}

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "| dim | operation | bit op | ns/op | float op | ns/op | speedup |\n"
      << "|-----|-----------|--------|-------|----------|-------|---------|\n";
  for (const auto& r : rows) {
    out << "| " << r.dim << " | " << r.operation << " | " << r.bit_op << " | " << fixed(r.bit_ns, 1)
        << " | " << r.float_op << " | " << fixed(r.float_ns, 1) << " | " << fixed(r.speedup, 2)
        << "x |\n";
  }
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "dim,operation,bit_op,bit_ns,float_op,float_ns,speedup\n";
  for (const auto& r : rows) {
    out << r.dim << ',' << r.operation << ',' << r.bit_op << ',' << fixed(r.bit_ns, 3) << ','
        << r.float_op << ',' << fixed(r.float_ns, 3) << ',' << fixed(r.speedup, 4) << '\n';
  }
}

}  // namespace bithash
