// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace bithash {

/// XXH64 (xxHash, 64-bit variant). Output is identical to the reference
/// implementation for every input and seed, on every platform.
std::uint64_t xxh64(std::string_view data, std::uint64_t seed = 0) noexcept;

struct HashConfig {
  std::size_t dim = 8000;
  std::uint64_t seed = 0;
  /// Float vectors only: add +1 or -1 per a second, independent hash.
  bool sign_hash = false;
};

/// Throws std::invalid_argument if dim == 0.
void validate(const HashConfig& config);

/// xxh64(feature, seed) mod dim.
std::size_t hash_feature(std::string_view feature, const HashConfig& config) noexcept;

/// +1 or -1, from a hash seeded independently of hash_feature.
int sign_of_feature(std::string_view feature, const HashConfig& config) noexcept;

}  // namespace bithash
