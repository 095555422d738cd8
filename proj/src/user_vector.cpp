// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/user_vector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bithash {

namespace {

template <typename V>
void check_uniform(std::span<const V> vectors, std::size_t dim, const char* who) {
  for (const auto& v : vectors) {
    if (v.dim() != dim) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

template <typename V>
Scores pairwise_impl(std::span<const V> history, std::span<const V> candidates, Kernel kernel) {
  if (history.empty()) throw std::invalid_argument("score_pairwise: empty history");
  if (candidates.empty()) throw std::invalid_argument("score_pairwise: empty recall set");
  const std::size_t dim = history.front().dim();
  check_uniform(history, dim, "score_pairwise");
  check_uniform(candidates, dim, "score_pairwise");

  Scores out;
  out.values.reserve(candidates.size());
  for (const auto& c : candidates) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& h : history) {
      best = std::max(best, similarity_score(kernel, h, c));
      ++out.comparisons;
    }
    out.values.push_back(best);
  }
  return out;
}

template <typename V>
Scores user_vector_impl(const V& user, std::span<const V> candidates, Kernel kernel) {
  if (candidates.empty()) throw std::invalid_argument("score_user_vector: empty recall set");
  check_uniform(candidates, user.dim(), "score_user_vector");
  Scores out;
  out.values.reserve(candidates.size());
  for (const auto& c : candidates) {
    out.values.push_back(similarity_score(kernel, user, c));
    ++out.comparisons;
  }
  return out;
}

}  // namespace

void validate(const RecallSet& recall) {
  if (recall.candidates.empty() || recall.candidates.size() > kMaxRecallSize) {
    throw std::invalid_argument("recall set: size must be in [1, 101], got " +
                                std::to_string(recall.candidates.size()));
  }
  const auto hits = std::count_if(recall.candidates.begin(), recall.candidates.end(),
                                  [&](const Item& it) { return it.id == recall.purchased; });
  if (hits != 1) {
    throw std::invalid_argument("recall set: purchased item '" + recall.purchased +
                                "' must appear exactly once");
  }
  const auto& category = std::find_if(recall.candidates.begin(), recall.candidates.end(),
                                      [&](const Item& it) { return it.id == recall.purchased; })
                             ->category;
  for (const auto& c : recall.candidates) {
    if (c.category != category) {
      throw std::invalid_argument("recall set: candidate '" + c.id + "' is outside category '" +
                                  category + "'");
    }
  }
}

FeatureVector combine_float(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) throw std::invalid_argument("combine_float: empty list");
  const std::size_t dim = vectors.front().dim();
  check_uniform(vectors, dim, "combine_float");

  FeatureVector sum(dim);
  auto acc = sum.mutable_values();
  for (const auto& v : vectors) {
    const auto x = v.values();
    for (std::size_t i = 0; i < dim; ++i) acc[i] += x[i];
  }
  double sq = 0.0;
  for (float x : acc) sq += static_cast<double>(x) * x;
  if (sq == 0.0) return sum;
  const float inv = static_cast<float>(1.0 / std::sqrt(sq));
  for (float& x : acc) x *= inv;
  return sum;
}

BitVector combine_bits(std::span<const BitVector> vectors) {
  if (vectors.empty()) throw std::invalid_argument("combine_bits: empty list");
  const std::size_t dim = vectors.front().dim();
  check_uniform(vectors, dim, "combine_bits");

  std::vector<BitVector::Word> words(vectors.front().words().begin(),
                                     vectors.front().words().end());
  for (const auto& v : vectors.subspan(1)) {
    const auto w = v.words();
    for (std::size_t i = 0; i < words.size(); ++i) words[i] |= w[i];
  }
  return BitVector(dim, std::move(words));
}

Scores score_pairwise(std::span<const FeatureVector> history,
                      std::span<const FeatureVector> candidates, Kernel kernel) {
  return pairwise_impl(history, candidates, kernel);
}

Scores score_pairwise(std::span<const BitVector> history, std::span<const BitVector> candidates,
                      Kernel kernel) {
  return pairwise_impl(history, candidates, kernel);
}

Scores score_user_vector(const FeatureVector& user_vector,
                         std::span<const FeatureVector> candidates, Kernel kernel) {
  return user_vector_impl(user_vector, candidates, kernel);
}

Scores score_user_vector(const BitVector& user_vector, std::span<const BitVector> candidates,
                         Kernel kernel) {
  return user_vector_impl(user_vector, candidates, kernel);
}

std::vector<ScoredCandidate> rank(std::span<const double> scores, const RecallSet& recall) {
  if (scores.size() != recall.candidates.size()) {
    throw std::invalid_argument("rank: " + std::to_string(scores.size()) + " scores for " +
                                std::to_string(recall.candidates.size()) + " candidates");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return recall.candidates[a].id < recall.candidates[b].id;
  });
  std::vector<ScoredCandidate> out;
  out.reserve(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    out.push_back({recall.candidates[order[r]].id, scores[order[r]], r + 1});
  }
  return out;
}

std::size_t purchased_rank(std::span<const ScoredCandidate> ranked, const RecallSet& recall) {
  for (const auto& c : ranked) {
    if (c.item_id == recall.purchased) return c.rank;
  }
  return 0;
}

}  // namespace bithash
