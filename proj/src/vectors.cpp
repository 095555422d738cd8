// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/vectors.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bithash {

namespace {

std::size_t count_bits(std::span<const BitVector::Word> words) noexcept {
  std::size_t n = 0;
  for (BitVector::Word w : words) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

}  // namespace

FeatureVector::FeatureVector(std::size_t dim) : values_(dim, 0.0F) {
  if (dim == 0) throw std::invalid_argument("FeatureVector: dim must be >= 1");
}

FeatureVector::FeatureVector(std::vector<float> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("FeatureVector: dim must be >= 1");
}

BitVector::BitVector(std::size_t dim) : dim_(dim), words_(words_for(dim), 0), popcount_(0) {
  if (dim == 0) throw std::invalid_argument("BitVector: dim must be >= 1");
}

BitVector::BitVector(std::size_t dim, std::vector<Word> words)
    : dim_(dim), words_(std::move(words)), popcount_(0) {
  if (dim == 0) throw std::invalid_argument("BitVector: dim must be >= 1");
  if (words_.size() != words_for(dim)) {
    throw std::invalid_argument("BitVector: word count does not match dim");
  }
  if (const std::size_t tail = dim % kWordBits; tail != 0) {
    words_.back() &= (Word{1} << tail) - 1;
  }
  popcount_ = count_bits(words_);
}

BitVector BitVector::from_indices(std::size_t dim, std::span<const std::size_t> indices) {
  std::vector<Word> words(words_for(dim), 0);
  for (std::size_t i : indices) {
    if (i >= dim) throw std::out_of_range("BitVector::from_indices: index past dim");
    words[i / kWordBits] |= Word{1} << (i % kWordBits);
  }
  return BitVector(dim, std::move(words));
}

FeatureVector build_float_vector(std::span<const NgramFeature> features, const HashConfig& config) {
  validate(config);
  FeatureVector v(config.dim);
  auto values = v.mutable_values();
  for (const auto& f : features) {
    const float delta = config.sign_hash ? static_cast<float>(sign_of_feature(f, config)) : 1.0F;
    values[hash_feature(f, config)] += delta;
  }
  return v;
}

BitVector build_bit_vector(std::span<const NgramFeature> features, const HashConfig& config) {
  validate(config);
  if (config.sign_hash) {
    throw std::invalid_argument("build_bit_vector: sign hashing is not defined for bit vectors");
  }
  std::vector<BitVector::Word> words(BitVector::words_for(config.dim), 0);
  for (const auto& f : features) {
    const std::size_t i = hash_feature(f, config);
    words[i / BitVector::kWordBits] |= BitVector::Word{1} << (i % BitVector::kWordBits);
  }
  return BitVector(config.dim, std::move(words));
}

FeatureVector to_feature_vector(const BitVector& bits) {
  FeatureVector v(bits.dim());
  auto values = v.mutable_values();
  for (std::size_t i = 0; i < bits.dim(); ++i) {
    if (bits.test(i)) values[i] = 1.0F;
  }
  return v;
}

double density(const BitVector& v) noexcept {
  return static_cast<double>(v.popcount()) / static_cast<double>(v.dim());
}

double density(const FeatureVector& v) noexcept {
  const auto values = v.values();
  const auto nonzero = std::count_if(values.begin(), values.end(), [](float x) { return x != 0.0F; });
  return static_cast<double>(nonzero) / static_cast<double>(v.dim());
}

}  // namespace bithash
