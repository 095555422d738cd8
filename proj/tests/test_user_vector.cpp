// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bithash/text_features.hpp"
#include "bithash/user_vector.hpp"

using namespace bithash;

namespace {

BitVector bits(const char* pattern) {
  std::vector<std::size_t> idx;
  std::size_t dim = 0;
  for (const char* p = pattern; *p; ++p, ++dim) {
    if (*p == '1') idx.push_back(dim);
  }
  return BitVector::from_indices(dim, idx);
}

BitVector random_bits(std::mt19937_64& rng, std::size_t dim, std::size_t set_bits) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < set_bits; ++i) idx.push_back(rng() % dim);
  return BitVector::from_indices(dim, idx);
}

RecallSet recall_of(std::vector<std::string> ids, std::string purchased) {
  RecallSet r;
  r.purchased = std::move(purchased);
  for (auto& id : ids) r.candidates.push_back({std::move(id), "title", "c"});
  return r;
}

std::string random_title(std::mt19937_64& rng) {
  std::string s;
  for (std::size_t i = 0, n = 10 + rng() % 60; i < n; ++i) s.push_back(static_cast<char>('a' + rng() % 26));
  return s;
}

}  // namespace

TEST_CASE("combine_float") {
  const FeatureVector unit(std::vector<float>{0.6F, 0.8F, 0});
  const std::vector<FeatureVector> one = {unit};
  const auto c1 = combine_float(one);
  for (std::size_t i = 0; i < 3; ++i) CHECK(c1[i] == doctest::Approx(unit[i]));

  const std::vector<FeatureVector> axes = {FeatureVector(std::vector<float>{1, 0, 0}),
                                           FeatureVector(std::vector<float>{0, 1, 0})};
  const auto c2 = combine_float(axes);
  CHECK(c2[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(c2[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(c2[2] == 0.0F);

  const std::vector<FeatureVector> zeros = {FeatureVector(3), FeatureVector(3)};
  CHECK(combine_float(zeros) == FeatureVector(3));

  CHECK_THROWS_AS(combine_float({}), std::invalid_argument);
  const std::vector<FeatureVector> mixed = {FeatureVector(3), FeatureVector(4)};
  CHECK_THROWS_AS(combine_float(mixed), std::invalid_argument);
}

TEST_CASE("combine_float of 44 title vectors has unit norm") {
  std::mt19937_64 rng(44);
  const HashConfig config{8000, 0, false};
  std::vector<FeatureVector> vs;
  for (int i = 0; i < 44; ++i) vs.push_back(build_float_vector(extract_ngrams(random_title(rng)), config));
  const auto u = combine_float(vs);
  double sq = 0;
  for (float x : u.values()) sq += double(x) * x;
  CHECK(std::abs(std::sqrt(sq) - 1.0) <= 1e-6);
}

TEST_CASE("combine_bits") {
  const std::vector<BitVector> one = {bits("1100")};
  CHECK(combine_bits(one) == bits("1100"));
  const std::vector<BitVector> two = {bits("1100"), bits("1010")};
  CHECK(combine_bits(two) == bits("1110"));
  CHECK_THROWS_AS(combine_bits({}), std::invalid_argument);
  const std::vector<BitVector> mixed = {bits("11"), bits("110")};
  CHECK_THROWS_AS(combine_bits(mixed), std::invalid_argument);
}

TEST_CASE("combine_bits is set union") {
  std::mt19937_64 rng(3);
  for (std::size_t dim : {5, 64, 130, 8000}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<BitVector> vs;
      for (std::size_t k = 0, n = 1 + rng() % 8; k < n; ++k) vs.push_back(random_bits(rng, dim, rng() % 20));
      std::set<std::size_t> oracle;
      std::size_t total = 0;
      for (const auto& v : vs) {
        total += v.popcount();
        for (std::size_t i = 0; i < dim; ++i) {
          if (v.test(i)) oracle.insert(i);
        }
      }
      const auto u = combine_bits(vs);
      CHECK(u.popcount() == oracle.size());
      for (std::size_t i = 0; i < dim; ++i) CHECK(u.test(i) == (oracle.count(i) == 1));
      CHECK(u.popcount() <= total);
      // Equality iff pairwise disjoint.
      bool disjoint = true;
      for (std::size_t a = 0; a < vs.size(); ++a) {
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          if (ochiai(vs[a], vs[b]) > 0) disjoint = false;
        }
      }
      CHECK((u.popcount() == total) == disjoint);
    }
  }
}

TEST_CASE("bit and float combination agree on support") {
  std::mt19937_64 rng(8);
  const HashConfig config{1000, 0, false};
  for (int t = 0; t < 20; ++t) {
    std::vector<BitVector> bs;
    std::vector<FeatureVector> fs;
    for (std::size_t k = 0, n = 1 + rng() % 10; k < n; ++k) {
      const auto grams = extract_ngrams(random_title(rng));
      bs.push_back(build_bit_vector(grams, config));
      fs.push_back(build_float_vector(grams, config));
    }
    const auto ub = combine_bits(bs);
    const auto uf = combine_float(fs);
    for (std::size_t i = 0; i < config.dim; ++i) CHECK(ub.test(i) == (uf[i] > 0.0F));
  }
}

TEST_CASE("density saturates monotonically") {
  CHECK(density(bits("0000")) == 0.0);
  CHECK(density(bits("1111")) == 1.0);

  const HashConfig config{8000, 0, false};
  const std::string title(80, 'x');
  std::string varied;
  for (int i = 0; i < 80; ++i) varied.push_back(static_cast<char>('a' + (i * 7) % 26));
  CHECK(density(build_bit_vector(extract_ngrams(varied), config)) <= 76.0 / 8000.0);
  CHECK(density(build_bit_vector(extract_ngrams(title), config)) <= 76.0 / 8000.0);

  std::mt19937_64 rng(12);
  std::vector<BitVector> vs;
  double last = 0;
  for (int i = 0; i < 100; ++i) {
    vs.push_back(build_bit_vector(extract_ngrams(random_title(rng)), config));
    const double d = density(combine_bits(vs));
    CHECK(d >= last);
    last = d;
  }
}

TEST_CASE("pairwise scoring") {
  const BitVector v = bits("1100");
  const BitVector w = bits("0011");
  const std::vector<BitVector> history = {v};
  const std::vector<BitVector> candidates = {v, w};
  const Scores s = score_pairwise(history, candidates, Kernel::kOchiai);
  CHECK(s.values == std::vector<double>{1.0, 0.0});
  CHECK(s.comparisons == 2);

  const std::vector<BitVector> empty;
  CHECK_THROWS_AS(score_pairwise(empty, candidates, Kernel::kOchiai), std::invalid_argument);
  CHECK_THROWS_AS(score_pairwise(history, empty, Kernel::kOchiai), std::invalid_argument);
  const std::vector<BitVector> wrong = {bits("110")};
  CHECK_THROWS_AS(score_pairwise(wrong, candidates, Kernel::kOchiai), std::invalid_argument);
}

TEST_CASE("comparison counts and history order") {
  std::mt19937_64 rng(4);
  std::vector<BitVector> history, candidates;
  for (int i = 0; i < 44; ++i) history.push_back(random_bits(rng, 8000, 60));
  for (int i = 0; i < 100; ++i) candidates.push_back(random_bits(rng, 8000, 60));

  const Scores pair = score_pairwise(history, candidates, Kernel::kOchiai);
  CHECK(pair.comparisons == 4400);
  const Scores uv = score_user_vector(combine_bits(history), candidates, Kernel::kOchiai);
  CHECK(uv.comparisons == 100);

  auto shuffled = history;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(score_pairwise(shuffled, candidates, Kernel::kOchiai).values == pair.values);

  for (Kernel k : {Kernel::kHamming, Kernel::kJaccard}) {
    CHECK(score_pairwise(history, candidates, k).comparisons == 4400);
  }
}

TEST_CASE("user vector scoring") {
  const std::vector<BitVector> candidates = {bits("1100"), bits("0110"), bits("0001")};
  const Scores s = score_user_vector(bits("0110"), candidates, Kernel::kOchiai);
  CHECK(s.values[1] == 1.0);
  CHECK(s.comparisons == 3);

  const std::vector<BitVector> single = {bits("1001")};
  const std::vector<BitVector> self = {bits("1001")};
  CHECK(score_user_vector(combine_bits(single), self, Kernel::kOchiai).values[0] == 1.0);

  const std::vector<FeatureVector> fc = {FeatureVector(std::vector<float>{1, 0}),
                                         FeatureVector(std::vector<float>{0, 1})};
  const Scores fs = score_user_vector(FeatureVector(std::vector<float>{0, 2}), fc, Kernel::kCosine);
  CHECK(fs.values[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(score_user_vector(bits("01"), candidates, Kernel::kOchiai), std::invalid_argument);
}

TEST_CASE("single-item history: user vector equals pairwise") {
  std::mt19937_64 rng(21);
  for (Kernel k : {Kernel::kOchiai, Kernel::kHamming, Kernel::kJaccard}) {
    std::vector<BitVector> history = {random_bits(rng, 500, 30)};
    std::vector<BitVector> candidates;
    for (int i = 0; i < 50; ++i) candidates.push_back(random_bits(rng, 500, 30));
    CHECK(score_user_vector(combine_bits(history), candidates, k).values ==
          score_pairwise(history, candidates, k).values);
  }
  std::vector<FeatureVector> fh = {FeatureVector(std::vector<float>{0, 3, 4})};
  std::vector<FeatureVector> fc = {FeatureVector(std::vector<float>{1, 1, 0}),
                                   FeatureVector(std::vector<float>{0, 0, 2})};
  const auto a = score_user_vector(combine_float(fh), fc, Kernel::kCosine).values;
  const auto b = score_pairwise(fh, fc, Kernel::kCosine).values;
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
}

TEST_CASE("rank") {
  const RecallSet r = recall_of({"a", "b", "c"}, "b");
  const std::vector<double> scores = {0.2, 0.9, 0.5};
  const auto ranked = rank(scores, r);
  CHECK(ranked[0].item_id == "b");
  CHECK(ranked[0].rank == 1);
  CHECK(ranked[1].item_id == "c");
  CHECK(ranked[2].item_id == "a");
  CHECK(purchased_rank(ranked, r) == 1);

  const RecallSet ties = recall_of({"z", "m", "a"}, "m");
  const std::vector<double> flat = {0.5, 0.5, 0.5};
  const auto tr = rank(flat, ties);
  CHECK(tr[0].item_id == "a");
  CHECK(tr[1].item_id == "m");
  CHECK(tr[2].item_id == "z");
  CHECK(purchased_rank(tr, ties) == 2);

  const std::vector<double> short_scores = {1.0};
  CHECK_THROWS_AS(rank(short_scores, r), std::invalid_argument);
}

TEST_CASE("rank output is a permutation with non-increasing scores") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::string> ids;
    std::vector<double> scores;
    const std::size_t m = 1 + rng() % 101;
    for (std::size_t i = 0; i < m; ++i) {
      ids.push_back("id" + std::to_string(rng() % 100000) + "_" + std::to_string(i));
      scores.push_back(double(rng() % 5) / 4.0);
    }
    const RecallSet r = recall_of(ids, ids[0]);
    const auto ranked = rank(scores, r);
    std::set<std::size_t> ranks;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      ranks.insert(ranked[i].rank);
      CHECK(ranked[i].rank == i + 1);
      if (i > 0) CHECK(ranked[i - 1].score >= ranked[i].score);
    }
    CHECK(ranks.size() == m);
  }
}

TEST_CASE("recall set validation") {
  CHECK_NOTHROW(validate(recall_of({"a", "b"}, "a")));
  CHECK_THROWS_AS(validate(recall_of({}, "a")), std::invalid_argument);
  CHECK_THROWS_AS(validate(recall_of({"b"}, "a")), std::invalid_argument);
  CHECK_THROWS_AS(validate(recall_of({"a", "a"}, "a")), std::invalid_argument);
  RecallSet mixed = recall_of({"a", "b"}, "a");
  mixed.candidates[1].category = "other";
  CHECK_THROWS_AS(validate(mixed), std::invalid_argument);
  std::vector<std::string> many;
  for (int i = 0; i < 102; ++i) many.push_back("i" + std::to_string(i));
  CHECK_THROWS_AS(validate(recall_of(many, "i0")), std::invalid_argument);
}
