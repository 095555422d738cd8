// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
//
// Binary vector record:
//
//   offset  size  field
//   0       4     magic "BHV1"
//   4       1     type tag: 0x01 float, 0x02 bit
//   5       4     dim, little-endian uint32
//   9       ...   payload
//
// Float payload is dim little-endian IEEE-754 binary32 values. Bit payload
// is ceil(dim/8) bytes, bit i stored in byte i/8 at position i%8 (LSB-first).
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bithash/vectors.hpp"

namespace bithash {

enum class ElementType : std::uint8_t { kFloat = 0x01, kBit = 0x02 };

inline constexpr std::array<std::uint8_t, 4> kVectorMagic = {'B', 'H', 'V', '1'};
inline constexpr std::size_t kRecordHeaderBytes = 9;

using AnyVector = std::variant<FeatureVector, BitVector>;

class ParseError : public std::runtime_error {
 public:
  enum class Kind { kBadMagic, kUnknownTag, kTruncated, kBadDimension, kBadPadding, kTrailingBytes };

  ParseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Payload size in bytes: 4*dim for floats, ceil(dim/8) for bits.
constexpr std::size_t payload_bytes(ElementType type, std::size_t dim) noexcept {
  return type == ElementType::kFloat ? dim * 4 : (dim + 7) / 8;
}

std::vector<std::uint8_t> serialize(const FeatureVector& v);
std::vector<std::uint8_t> serialize(const BitVector& v);
std::vector<std::uint8_t> serialize(const AnyVector& v);

struct Decoded {
  AnyVector vector;
  std::size_t bytes_read;
};

/// Decodes the record at the start of `bytes`; trailing bytes are ignored
/// and reported through bytes_read. Throws ParseError.
Decoded deserialize_prefix(std::span<const std::uint8_t> bytes);

/// Decodes exactly one record. Throws ParseError, including on trailing bytes.
AnyVector deserialize(std::span<const std::uint8_t> bytes);

}  // namespace bithash
