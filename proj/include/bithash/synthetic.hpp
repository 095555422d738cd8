// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "bithash/dataset.hpp"

namespace bithash {

/// Parameters of the synthetic clickstream. Titles are product phrases
/// ("brand model") plus category attribute tokens plus global noise tokens.
struct SynthConfig {
  std::size_t users = 2000;
  std::size_t categories = 20;
  /// Distinct words per category; split into brands, models and attributes.
  std::size_t vocabulary = 120;
  /// Catalog titles per category; distractors are drawn from these.
  std::size_t titles_per_category = 400;
  /// History length is log-normal around this median, clamped to [1, history_max].
  double history_median = 44.0;
  double history_sigma = 0.6;
  std::size_t history_max = 400;
  std::size_t distractors = 100;
  /// Probability that a history item shares the purchased product phrase.
  double signal = 0.5;
  std::size_t attribute_tokens = 2;
  /// Noise tokens per title are drawn uniformly from [0, noise_tokens].
  std::size_t noise_tokens = 3;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on counts of zero or signal outside [0, 1].
void validate(const SynthConfig& config);

struct SynthCase {
  EvalCase eval;
  /// signal[i] is true when history item i shares the purchased product.
  std::vector<bool> signal;
};

struct SynthDataset {
  std::vector<SynthCase> cases;
  /// Every item referenced by any case, catalog first, in creation order.
  std::vector<Item> items;

  std::vector<EvalCase> eval_cases() const;
};

/// Deterministic in config.seed.
SynthDataset generate_synthetic(const SynthConfig& config);

/// Writes items.jsonl, events.jsonl and truth.jsonl into `dir`.
/// Views are split into 30+ minute separated sessions; the purchase gets its
/// own session, preceded there by a view of the purchased item.
void write_synthetic(const SynthDataset& data, const std::filesystem::path& dir);

}  // namespace bithash
