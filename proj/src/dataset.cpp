// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <unordered_map>

#include <json.hpp>

#include "bithash/random.hpp"

namespace bithash {

namespace {

using nlohmann::json;

enum class EventType { kView, kPurchase };

struct Event {
  std::int64_t ts;
  EventType type;
  std::string item_id;
  std::string session_id;
};

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::optional<json> parse_object(const std::string& line) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

std::optional<std::string> string_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

LoadedDataset load_dataset(std::istream& items, std::istream& events, const LoadOptions& options) {
  if (!items) throw DataError("items stream is not readable");
  if (!events) throw DataError("events stream is not readable");

  LoadedDataset out;
  LoadStats& stats = out.stats;

  std::unordered_map<std::string, Item> catalog;
  std::map<std::string, std::vector<std::string>> by_category;
  std::string line;
  while (std::getline(items, line)) {
    if (blank(line)) continue;
    ++stats.item_lines;
    const auto j = parse_object(line);
    std::optional<std::string> id, title, category;
    if (j) {
      id = string_field(*j, "item_id");
      title = string_field(*j, "title");
      category = string_field(*j, "category");
    }
    if (!id || !title || !category || id->empty()) {
      ++stats.malformed_item_lines;
      continue;
    }
    if (catalog.contains(*id)) {
      ++stats.duplicate_items;
      continue;
    }
    by_category[*category].push_back(*id);
    catalog.emplace(*id, Item{*id, std::move(*title), std::move(*category)});
  }
  if (items.bad()) throw DataError("error while reading items stream");

  std::vector<std::string> user_order;
  std::unordered_map<std::string, std::vector<Event>> per_user;
  while (std::getline(events, line)) {
    if (blank(line)) continue;
    ++stats.event_lines;
    const auto j = parse_object(line);
    std::optional<std::string> user, type, item, session;
    std::optional<std::int64_t> ts;
    if (j) {
      user = string_field(*j, "user_id");
      type = string_field(*j, "type");
      item = string_field(*j, "item_id");
      session = string_field(*j, "session_id");
      if (const auto it = j->find("ts"); it != j->end() && it->is_number_integer()) {
        ts = it->get<std::int64_t>();
      }
    }
    if (!user || !type || !item || !session || !ts || (*type != "view" && *type != "purchase")) {
      ++stats.malformed_event_lines;
      continue;
    }
    if (!catalog.contains(*item)) {
      ++stats.unknown_item_events;
      continue;
    }
    auto [it, inserted] = per_user.try_emplace(*user);
    if (inserted) user_order.push_back(*user);
    it->second.push_back(
        {*ts, *type == "view" ? EventType::kView : EventType::kPurchase, *item, *session});
  }
  if (events.bad()) throw DataError("error while reading events stream");

  stats.users = user_order.size();
  Rng rng(options.seed);
  for (const auto& user : user_order) {
    auto& evs = per_user[user];
    std::stable_sort(evs.begin(), evs.end(),
                     [](const Event& a, const Event& b) { return a.ts < b.ts; });
    const auto last = std::find_if(evs.rbegin(), evs.rend(),
                                   [](const Event& e) { return e.type == EventType::kPurchase; });
    if (last == evs.rend()) {
      ++stats.users_without_purchase;
      continue;
    }
    const Event& purchase = *last;
    const auto purchase_pos = static_cast<std::size_t>(std::distance(evs.begin(), last.base()) - 1);

    EvalCase c;
    c.history.user_id = user;
    for (std::size_t i = 0; i < purchase_pos; ++i) {
      const Event& e = evs[i];
      if (e.type != EventType::kView || e.ts >= purchase.ts) continue;
      if (e.item_id == purchase.item_id) continue;
      if (options.prior_sessions_only && e.session_id == purchase.session_id) continue;
      c.history.viewed.push_back(catalog.at(e.item_id));
    }
    if (c.history.viewed.empty()) {
      ++stats.users_without_history;
      continue;
    }

    const Item& bought = catalog.at(purchase.item_id);
    const auto& pool = by_category.at(bought.category);
    std::vector<std::size_t> eligible;
    eligible.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i] != bought.id) eligible.push_back(i);
    }
    c.recall.purchased = bought.id;
    for (std::size_t k : rng.sample(eligible.size(), options.max_distractors)) {
      c.recall.candidates.push_back(catalog.at(pool[eligible[k]]));
    }
    c.recall.candidates.push_back(bought);
    rng.shuffle(c.recall.candidates);
    ++stats.recall_sizes[c.recall.candidates.size()];
    out.cases.push_back(std::move(c));
  }

  if (out.cases.empty()) {
    throw DataError("no valid evaluation cases in dataset (" + std::to_string(stats.users) +
                    " users, " + std::to_string(stats.users_without_purchase) +
                    " without purchase, " + std::to_string(stats.users_without_history) +
                    " without prior views)");
  }
  return out;
}

LoadedDataset load_dataset(const std::filesystem::path& items, const std::filesystem::path& events,
                           const LoadOptions& options) {
  std::ifstream items_in(items);
  if (!items_in) throw DataError("cannot open items file " + items.string());
  std::ifstream events_in(events);
  if (!events_in) throw DataError("cannot open events file " + events.string());
  return load_dataset(items_in, events_in, options);
}

std::vector<std::string> summarize(const LoadStats& stats) {
  std::vector<std::string> lines;
  auto add = [&](std::size_t n, const char* what) {
    if (n != 0) lines.push_back(std::to_string(n) + " " + what);
  };
  add(stats.malformed_item_lines, "malformed item lines skipped");
  add(stats.duplicate_items, "duplicate item ids skipped");
  add(stats.malformed_event_lines, "malformed event lines skipped");
  add(stats.unknown_item_events, "events referencing unknown items skipped");
  add(stats.users_without_purchase, "users without a purchase");
  add(stats.users_without_history, "users without prior viewed items");
  return lines;
}

}  // namespace bithash
