// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
//
// JSONL ingestion. One object per line:
//
//   items.jsonl   {"item_id": str, "title": str, "category": str}
//   events.jsonl  {"user_id": str, "ts": int, "type": "view"|"purchase",
//                  "item_id": str, "session_id": str}
//
// Sessions are taken as given; no timestamp-based segmentation is done.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bithash/user_vector.hpp"

namespace bithash {

/// One purchase prediction task.
struct EvalCase {
  UserHistory history;
  RecallSet recall;

  friend bool operator==(const EvalCase&, const EvalCase&) = default;
};

/// Unreadable input or no usable cases.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadOptions {
  std::size_t max_distractors = 100;
  std::uint64_t seed = 0;
  /// Only views from sessions before the purchase session count as history.
  bool prior_sessions_only = true;
};

struct LoadStats {
  std::size_t item_lines = 0;
  std::size_t event_lines = 0;
  std::size_t malformed_item_lines = 0;
  std::size_t malformed_event_lines = 0;
  std::size_t duplicate_items = 0;
  std::size_t unknown_item_events = 0;
  std::size_t users = 0;
  std::size_t users_without_purchase = 0;
  std::size_t users_without_history = 0;
  /// Recall set size M -> number of cases.
  std::map<std::size_t, std::size_t> recall_sizes;
};

struct LoadedDataset {
  std::vector<EvalCase> cases;
  LoadStats stats;
};

/// Builds one case per user from their last purchase. History is the views
/// before it (excluding the purchased item), and the recall set is the
/// purchased item plus up to max_distractors random items of its category.
/// Malformed lines are counted and skipped. Throws DataError when no case
/// survives.
LoadedDataset load_dataset(std::istream& items, std::istream& events, const LoadOptions& options);

/// Throws DataError if either file cannot be opened.
LoadedDataset load_dataset(const std::filesystem::path& items, const std::filesystem::path& events,
                           const LoadOptions& options);

/// One line per nonzero counter, for diagnostics.
std::vector<std::string> summarize(const LoadStats& stats);

}  // namespace bithash
