// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/similarity.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bithash {

namespace {

template <typename V>
void check_dims(const V& a, const V& b, const char* who) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

// Word-wise popcount of op(a[i], b[i]). Four accumulators keep the popcnt
// chain from serializing.
template <typename Op>
std::size_t popcount_of(std::span<const BitVector::Word> a, std::span<const BitVector::Word> b,
                        Op op) noexcept {
  std::size_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    c0 += static_cast<std::size_t>(std::popcount(op(a[i], b[i])));
    c1 += static_cast<std::size_t>(std::popcount(op(a[i + 1], b[i + 1])));
    c2 += static_cast<std::size_t>(std::popcount(op(a[i + 2], b[i + 2])));
    c3 += static_cast<std::size_t>(std::popcount(op(a[i + 3], b[i + 3])));
  }
  for (; i < n; ++i) c0 += static_cast<std::size_t>(std::popcount(op(a[i], b[i])));
  return c0 + c1 + c2 + c3;
}

constexpr auto kAnd = [](BitVector::Word x, BitVector::Word y) { return x & y; };
constexpr auto kXor = [](BitVector::Word x, BitVector::Word y) { return x ^ y; };

}  // namespace

double cosine(const FeatureVector& a, const FeatureVector& b) {
  check_dims(a, b, "cosine");
  const auto x = a.values();
  const auto y = b.values();
  constexpr std::size_t kLanes = 8;
  double dot[kLanes] = {};
  double nx[kLanes] = {};
  double ny[kLanes] = {};
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double xv = x[i + l];
      const double yv = y[i + l];
      dot[l] += xv * yv;
      nx[l] += xv * xv;
      ny[l] += yv * yv;
    }
  }
  for (; i < n; ++i) {
    const double xv = x[i];
    const double yv = y[i];
    dot[0] += xv * yv;
    nx[0] += xv * xv;
    ny[0] += yv * yv;
  }
  double d = 0, sx = 0, sy = 0;
  for (std::size_t l = 0; l < kLanes; ++l) {
    d += dot[l];
    sx += nx[l];
    sy += ny[l];
  }
  if (sx == 0.0 || sy == 0.0) return 0.0;
  return d / (std::sqrt(sx) * std::sqrt(sy));
}

double ochiai(const BitVector& a, const BitVector& b) {
  check_dims(a, b, "ochiai");
  if (a.popcount() == 0 || b.popcount() == 0) return 0.0;
  const std::size_t common = popcount_of(a.words(), b.words(), kAnd);
  return static_cast<double>(common) /
         std::sqrt(static_cast<double>(a.popcount()) * static_cast<double>(b.popcount()));
}

std::size_t hamming(const BitVector& a, const BitVector& b) {
  check_dims(a, b, "hamming");
  return popcount_of(a.words(), b.words(), kXor);
}

double jaccard(const BitVector& a, const BitVector& b) {
  check_dims(a, b, "jaccard");
  const std::size_t common = popcount_of(a.words(), b.words(), kAnd);
  // |a ∪ b| = |a| + |b| - |a ∩ b|
  const std::size_t uni = a.popcount() + b.popcount() - common;
  if (uni == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

std::string_view to_string(Kernel k) noexcept {
  switch (k) {
    case Kernel::kCosine: return "cosine";
    case Kernel::kOchiai: return "ochiai";
    case Kernel::kHamming: return "hamming";
    case Kernel::kJaccard: return "jaccard";
  }
  return "unknown";
}

std::optional<Kernel> parse_kernel(std::string_view name) noexcept {
  if (name == "cosine") return Kernel::kCosine;
  if (name == "ochiai") return Kernel::kOchiai;
  if (name == "hamming") return Kernel::kHamming;
  if (name == "jaccard") return Kernel::kJaccard;
  return std::nullopt;
}

double similarity_score(Kernel k, const FeatureVector& a, const FeatureVector& b) {
  if (k != Kernel::kCosine) {
    throw std::invalid_argument("kernel " + std::string(to_string(k)) + " needs bit vectors");
  }
  return cosine(a, b);
}

double similarity_score(Kernel k, const BitVector& a, const BitVector& b) {
  switch (k) {
    case Kernel::kOchiai: return ochiai(a, b);
    case Kernel::kHamming: return -static_cast<double>(hamming(a, b));
    case Kernel::kJaccard: return jaccard(a, b);
    case Kernel::kCosine: break;
  }
  throw std::invalid_argument("kernel cosine needs float vectors");
}

}  // namespace bithash
