// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bithash/hashing.hpp"
#include "bithash/text_features.hpp"

namespace bithash {

/// Dense hashed vector of 32-bit floats.
class FeatureVector {
 public:
  /// Zero vector. Throws std::invalid_argument if dim == 0.
  explicit FeatureVector(std::size_t dim);
  /// Throws std::invalid_argument if values is empty.
  explicit FeatureVector(std::vector<float> values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const float> values() const noexcept { return values_; }
  std::span<float> mutable_values() noexcept { return values_; }
  float operator[](std::size_t i) const noexcept { return values_[i]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<float> values_;
};

/// Fixed-width bit array packed LSB-first into 64-bit words. Padding bits
/// past dim in the final word are always zero and the popcount is cached,
/// so the value is immutable once constructed.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  static constexpr std::size_t words_for(std::size_t dim) noexcept {
    return (dim + kWordBits - 1) / kWordBits;
  }

  /// All-zero vector. Throws std::invalid_argument if dim == 0.
  explicit BitVector(std::size_t dim);
  /// Takes packed words; padding bits are cleared. Throws
  /// std::invalid_argument if the word count does not match dim.
  BitVector(std::size_t dim, std::vector<Word> words);

  static BitVector from_indices(std::size_t dim, std::span<const std::size_t> indices);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t popcount() const noexcept { return popcount_; }
  std::span<const Word> words() const noexcept { return words_; }
  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t dim_;
  std::vector<Word> words_;
  std::size_t popcount_;
};

FeatureVector build_float_vector(std::span<const NgramFeature> features, const HashConfig& config);

/// Throws std::invalid_argument if config.sign_hash is set.
BitVector build_bit_vector(std::span<const NgramFeature> features, const HashConfig& config);

/// Maps set bits to 1.0 and clear bits to 0.0.
FeatureVector to_feature_vector(const BitVector& bits);

/// Fraction of set bits, popcount / dim.
double density(const BitVector& v) noexcept;

/// Fraction of nonzero elements.
double density(const FeatureVector& v) noexcept;

}  // namespace bithash
