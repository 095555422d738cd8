// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bithash/bench.hpp"

using namespace bithash;

TEST_CASE("bench rows and checksums") {
  BenchConfig c;
  c.dims = {64, 100};
  c.corpus = 64;
  c.combine_width = 8;
  c.min_seconds = 0.01;
  const auto rows = run_bench(c);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.bit_ns > 0);
    CHECK(r.float_ns > 0);
    CHECK(r.speedup == doctest::Approx(r.float_ns / r.bit_ns));
    // Ochiai and cosine of the same 0/1 vectors; OR and sum share support.
    CHECK(std::abs(r.bit_checksum - r.float_checksum) < 1e-6 * (1 + std::abs(r.bit_checksum)));
  }
  std::ostringstream table, csv;
  write_bench_table(table, rows);
  write_bench_csv(csv, rows);
  CHECK(csv.str().rfind("dim,operation,bit_op,bit_ns,float_op,float_ns,speedup\n", 0) == 0);
}

TEST_CASE("bench on zero vectors reports zero similarity") {
  BenchConfig c;
  c.dims = {64};
  c.corpus = 16;
  c.combine_width = 4;
  c.min_seconds = 0.005;
  c.zero_vectors = true;
  const auto rows = run_bench(c);
  CHECK(rows[0].bit_checksum == 0.0);
  CHECK(rows[0].float_checksum == 0.0);
}

TEST_CASE("bench config errors") {
  BenchConfig c;
  c.corpus = 1;
  CHECK_THROWS_AS(run_bench(c), std::invalid_argument);
  c = BenchConfig{};
  c.dims = {0};
  CHECK_THROWS_AS(run_bench(c), std::invalid_argument);
}
