// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bithash/similarity.hpp"
#include "bithash/vectors.hpp"

namespace bithash {

struct Item {
  std::string id;
  std::string title;
  std::string category;

  friend bool operator==(const Item&, const Item&) = default;
};

/// Items a user viewed before a purchase, oldest first.
struct UserHistory {
  std::string user_id;
  std::vector<Item> viewed;

  friend bool operator==(const UserHistory&, const UserHistory&) = default;
};

/// The purchased item plus same-category distractors, in presentation order.
struct RecallSet {
  std::string purchased;
  std::vector<Item> candidates;

  friend bool operator==(const RecallSet&, const RecallSet&) = default;
};

/// Up to 100 distractors plus the purchased item.
inline constexpr std::size_t kMaxRecallSize = 101;

/// Throws std::invalid_argument unless 1 <= M <= kMaxRecallSize, the
/// purchased id occurs exactly once and every candidate shares its category.
void validate(const RecallSet& recall);

struct ScoredCandidate {
  std::string item_id;
  double score;
  std::size_t rank;  // 1-based
};

/// Candidate scores plus the number of kernel invocations spent on them.
struct Scores {
  std::vector<double> values;
  std::uint64_t comparisons = 0;
};

/// Element-wise sum, L2-normalized. An all-zero sum comes back unchanged.
/// Throws std::invalid_argument on an empty list or mixed dims.
FeatureVector combine_float(std::span<const FeatureVector> vectors);

/// Word-wise OR. Throws std::invalid_argument on an empty list or mixed dims.
BitVector combine_bits(std::span<const BitVector> vectors);

/// Candidate j scores max_i k(history_i, candidate_j): M*N kernel calls.
Scores score_pairwise(std::span<const FeatureVector> history,
                      std::span<const FeatureVector> candidates, Kernel kernel);
Scores score_pairwise(std::span<const BitVector> history, std::span<const BitVector> candidates,
                      Kernel kernel);

/// Candidate j scores k(user_vector, candidate_j): M kernel calls.
Scores score_user_vector(const FeatureVector& user_vector,
                         std::span<const FeatureVector> candidates, Kernel kernel);
Scores score_user_vector(const BitVector& user_vector, std::span<const BitVector> candidates,
                         Kernel kernel);

/// Sorts by descending score, ties by ascending item id. Throws
/// std::invalid_argument if scores and candidates differ in length.
std::vector<ScoredCandidate> rank(std::span<const double> scores, const RecallSet& recall);

/// 1-based rank of the purchased item; 0 if it is absent.
std::size_t purchased_rank(std::span<const ScoredCandidate> ranked, const RecallSet& recall);

}  // namespace bithash
