// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "bithash/vectors.hpp"

namespace bithash {

// All kernels throw std::invalid_argument on a dimension mismatch and never
// allocate.

/// dot(a,b) / (|a| |b|); 0.0 when either norm is zero.
double cosine(const FeatureVector& a, const FeatureVector& b);

/// Binary cosine: popcount(a & b) / sqrt(popcount(a) * popcount(b)).
/// 0.0 when either vector is empty.
double ochiai(const BitVector& a, const BitVector& b);

/// popcount(a ^ b).
std::size_t hamming(const BitVector& a, const BitVector& b);

/// popcount(a & b) / popcount(a | b); 0.0 when the union is empty.
double jaccard(const BitVector& a, const BitVector& b);

enum class Kernel { kCosine, kOchiai, kHamming, kJaccard };

std::string_view to_string(Kernel k) noexcept;
std::optional<Kernel> parse_kernel(std::string_view name) noexcept;

/// True for cosine; the others operate on bit vectors.
constexpr bool is_float_kernel(Kernel k) noexcept { return k == Kernel::kCosine; }

/// Kernel as a ranking score, higher is more similar. Hamming is negated.
double similarity_score(Kernel k, const FeatureVector& a, const FeatureVector& b);
double similarity_score(Kernel k, const BitVector& a, const BitVector& b);

}  // namespace bithash
