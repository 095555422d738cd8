// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include <json.hpp>

#include "bithash/random.hpp"

namespace bithash {

namespace {

constexpr std::size_t kMaxTitleChars = 80;
constexpr std::size_t kNoisePool = 300;
// Noise token frequency follows a Zipf law, so a few tokens recur across
// many titles the way "new" or "black" do in real listings.
constexpr double kNoiseZipf = 1.1;
constexpr std::int64_t kEpochStart = 1478000000;  // early November 2016

struct Product {
  std::string phrase;  // "Brand MODEL"
};

struct Category {
  std::string name;
  std::vector<Product> products;
  std::vector<std::string> attributes;
  std::vector<std::size_t> catalog;          // indices into items
  std::vector<std::size_t> catalog_product;  // product of each catalog entry
};

class Generator {
 public:
  explicit Generator(const SynthConfig& config) : config_(config), rng_(config.seed) {}

  SynthDataset run() {
    build_vocabulary();
    build_catalog();
    SynthDataset out;
    out.cases.reserve(config_.users);
    for (std::size_t u = 0; u < config_.users; ++u) out.cases.push_back(make_case(u));
    out.items = std::move(items_);
    return out;
  }

 private:
  static constexpr const char* kConsonants = "bcdfghjklmnprstvwz";
  static constexpr const char* kVowels = "aeiou";

  std::string syllables(std::size_t count) {
    std::string w;
    for (std::size_t i = 0; i < count; ++i) {
      w.push_back(kConsonants[rng_.below(18)]);
      w.push_back(kVowels[rng_.below(5)]);
      if (rng_.bernoulli(0.3)) w.push_back(kConsonants[rng_.below(18)]);
    }
    return w;
  }

  std::string unique(auto make) {
    for (;;) {
      std::string w = make();
      if (used_words_.insert(w).second) return w;
    }
  }

  std::string brand() {
    return unique([&] {
      std::string w = syllables(rng_.between(2, 3));
      w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
      return w;
    });
  }

  std::string model() {
    return unique([&] {
      std::string w;
      for (std::size_t i = 0, n = rng_.between(2, 3); i < n; ++i) {
        w.push_back(static_cast<char>('A' + rng_.below(26)));
      }
      if (rng_.bernoulli(0.5)) w.push_back('-');
      for (std::size_t i = 0, n = rng_.between(2, 4); i < n; ++i) {
        w.push_back(static_cast<char>('0' + rng_.below(10)));
      }
      if (rng_.bernoulli(0.3)) w.push_back(static_cast<char>('A' + rng_.below(26)));
      return w;
    });
  }

  std::string attribute() {
    return unique([&] { return syllables(rng_.between(1, 3)); });
  }

  std::string noise() {
    switch (rng_.below(6)) {
      case 0: return std::to_string(rng_.between(1, 999)) + "pp";
      case 1: return "size " + std::to_string(rng_.between(4, 14));
      case 2: return "#" + std::to_string(rng_.between(1, 99));
      case 3: return std::to_string(rng_.between(1, 100)) + "%";
      case 4: {
        static constexpr const char* kShouts[] = {"NEW", "EUC!", "*EXCELLENT*", "RARE", "L@@K",
                                                  "NIB", "Authentic", "FREE SHIP", "Lot", "OEM",
                                                  "Black", "White", "Genuine", "Original", "Vintage"};
        return kShouts[rng_.below(15)];
      }
      default: return std::to_string(rng_.between(1, 9999));
    }
  }

  void build_vocabulary() {
    const std::size_t v = config_.vocabulary;
    const std::size_t brands = std::max<std::size_t>(1, v / 10);
    const std::size_t models = std::max<std::size_t>(1, v / 2);
    const std::size_t attrs = v > brands + models ? v - brands - models : 1;

    for (std::size_t i = 0; i < kNoisePool; ++i) noise_.push_back(noise());
    double total = 0;
    for (std::size_t i = 0; i < kNoisePool; ++i) {
      total += 1.0 / std::pow(static_cast<double>(i + 1), kNoiseZipf);
      noise_cdf_.push_back(total);
    }
    for (double& c : noise_cdf_) c /= total;
    categories_.resize(config_.categories);
    for (std::size_t c = 0; c < config_.categories; ++c) {
      Category& cat = categories_[c];
      cat.name = "cat" + std::to_string(c);
      std::vector<std::string> brand_names;
      for (std::size_t i = 0; i < brands; ++i) brand_names.push_back(brand());
      for (std::size_t i = 0; i < models; ++i) {
        cat.products.push_back({brand_names[rng_.below(brands)] + " " + model()});
      }
      for (std::size_t i = 0; i < attrs; ++i) cat.attributes.push_back(attribute());
    }
  }

  std::string title(const Category& cat, std::size_t product) {
    // Tokens within one title are distinct.
    std::vector<std::string> extra;
    for (std::size_t k : rng_.sample(cat.attributes.size(), config_.attribute_tokens)) {
      extra.push_back(cat.attributes[k]);
    }
    std::vector<std::size_t> picked;
    for (std::size_t i = 0, n = rng_.between(0, config_.noise_tokens); i < n; ++i) {
      const std::size_t k = zipf_noise();
      if (std::find(picked.begin(), picked.end(), k) == picked.end()) picked.push_back(k);
    }
    for (std::size_t k : picked) extra.push_back(noise_[k]);
    rng_.shuffle(extra);
    std::string t = cat.products[product].phrase;
    for (const auto& tok : extra) {
      if (t.size() + 1 + tok.size() > kMaxTitleChars) continue;
      t += ' ';
      t += tok;
    }
    return t;
  }

  std::size_t zipf_noise() {
    const double u = rng_.uniform();
    const auto it = std::upper_bound(noise_cdf_.begin(), noise_cdf_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - noise_cdf_.begin()), noise_.size() - 1);
  }

  std::string item_id() {
    for (;;) {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_.next()));
      if (used_ids_.insert(buf).second) return buf;
    }
  }

  std::size_t new_item(std::size_t category, std::size_t product) {
    items_.push_back({item_id(), title(categories_[category], product), categories_[category].name});
    return items_.size() - 1;
  }

  void build_catalog() {
    for (std::size_t c = 0; c < categories_.size(); ++c) {
      for (std::size_t i = 0; i < config_.titles_per_category; ++i) {
        const std::size_t product = rng_.below(categories_[c].products.size());
        const std::size_t idx = new_item(c, product);
        categories_[c].catalog.push_back(idx);
        categories_[c].catalog_product.push_back(product);
      }
    }
  }

  std::size_t history_length() {
    const double n = std::round(config_.history_median * std::exp(config_.history_sigma * rng_.normal()));
    return static_cast<std::size_t>(std::clamp(n, 1.0, static_cast<double>(config_.history_max)));
  }

  SynthCase make_case(std::size_t user) {
    const std::size_t c = rng_.below(categories_.size());
    const Category& cat = categories_[c];
    const std::size_t pick = rng_.below(cat.catalog.size());
    const std::size_t product = cat.catalog_product[pick];
    const Item purchased = items_[cat.catalog[pick]];

    SynthCase out;
    char uid[16];
    std::snprintf(uid, sizeof uid, "u%06zu", user);
    out.eval.history.user_id = uid;

    const std::size_t n = history_length();
    for (std::size_t i = 0; i < n; ++i) {
      const bool signal = rng_.bernoulli(config_.signal);
      std::size_t idx;
      if (signal) {
        idx = new_item(c, product);
      } else if (categories_.size() > 1) {
        std::size_t other = rng_.below(categories_.size() - 1);
        if (other >= c) ++other;
        idx = new_item(other, rng_.below(categories_[other].products.size()));
      } else {
        std::size_t other = rng_.below(cat.products.size());
        if (cat.products.size() > 1) {
          while (other == product) other = rng_.below(cat.products.size());
        }
        idx = new_item(c, other);
      }
      out.eval.history.viewed.push_back(items_[idx]);
      out.signal.push_back(signal);
    }

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < cat.catalog.size(); ++i) {
      if (cat.catalog_product[i] != product) eligible.push_back(cat.catalog[i]);
    }
    out.eval.recall.purchased = purchased.id;
    for (std::size_t k : rng_.sample(eligible.size(), config_.distractors)) {
      out.eval.recall.candidates.push_back(items_[eligible[k]]);
    }
    out.eval.recall.candidates.push_back(purchased);
    rng_.shuffle(out.eval.recall.candidates);
    return out;
  }

  const SynthConfig& config_;
  Rng rng_;
  std::vector<std::string> noise_;
  std::vector<double> noise_cdf_;
  std::vector<Category> categories_;
  std::vector<Item> items_;
  std::unordered_set<std::string> used_words_;
  std::unordered_set<std::string> used_ids_;
};

}  // namespace

void validate(const SynthConfig& config) {
  if (config.users == 0 || config.categories == 0 || config.vocabulary == 0 ||
      config.titles_per_category == 0 || config.history_max == 0 || config.distractors == 0) {
    throw std::invalid_argument("synthetic config: counts must be >= 1");
  }
  if (!(config.signal >= 0.0 && config.signal <= 1.0)) {
    throw std::invalid_argument("synthetic config: signal must be in [0, 1]");
  }
  if (!(config.history_median >= 1.0) || !(config.history_sigma >= 0.0)) {
    throw std::invalid_argument("synthetic config: history median must be >= 1, sigma >= 0");
  }
  if (config.distractors >= kMaxRecallSize) {
    throw std::invalid_argument("synthetic config: at most 100 distractors");
  }
}

std::vector<EvalCase> SynthDataset::eval_cases() const {
  std::vector<EvalCase> out;
  out.reserve(cases.size());
  for (const auto& c : cases) out.push_back(c.eval);
  return out;
}

SynthDataset generate_synthetic(const SynthConfig& config) {
  validate(config);
  return Generator(config).run();
}

void write_synthetic(const SynthDataset& data, const std::filesystem::path& dir) {
  using nlohmann::json;
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + (dir / name).string() + " for writing");
    return f;
  };
  std::ofstream items = open("items.jsonl");
  std::ofstream events = open("events.jsonl");
  std::ofstream truth = open("truth.jsonl");

  for (const auto& it : data.items) {
    items << json{{"item_id", it.id}, {"title", it.title}, {"category", it.category}}.dump() << '\n';
  }

  Rng rng(0x5E55);
  for (std::size_t u = 0; u < data.cases.size(); ++u) {
    const auto& c = data.cases[u];
    const std::string& user = c.eval.history.user_id;
    std::int64_t ts = kEpochStart + static_cast<std::int64_t>(u) * 1'000'000;
    std::size_t session = 0;
    auto emit = [&](const char* type, const std::string& item) {
      events << json{{"user_id", user},
                     {"ts", ts},
                     {"type", type},
                     {"item_id", item},
                     {"session_id", user + "-s" + std::to_string(session)}}
                    .dump()
             << '\n';
    };
    std::size_t left_in_session = rng.between(1, 8);
    for (const auto& viewed : c.eval.history.viewed) {
      if (left_in_session == 0) {
        ++session;
        ts += 3600;
        left_in_session = rng.between(1, 8);
      }
      emit("view", viewed.id);
      ts += 90;
      --left_in_session;
    }
    ++session;
    ts += 3600;
    emit("view", c.eval.recall.purchased);
    ts += 120;
    emit("purchase", c.eval.recall.purchased);

    json signal = json::array();
    for (std::size_t i = 0; i < c.signal.size(); ++i) {
      if (c.signal[i]) signal.push_back(c.eval.history.viewed[i].id);
    }
    truth << json{{"user_id", user}, {"purchased", c.eval.recall.purchased}, {"signal", signal}}.dump()
          << '\n';
  }
  if (!items || !events || !truth) {
    throw std::runtime_error("write failure in " + dir.string());
  }
}

}  // namespace bithash
