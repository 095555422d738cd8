// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/serialize.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>

namespace bithash {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::vector<std::uint8_t> header(ElementType type, std::size_t dim) {
  if (dim > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("serialize: dim does not fit in 32 bits");
  }
  std::vector<std::uint8_t> out(kVectorMagic.begin(), kVectorMagic.end());
  out.reserve(kRecordHeaderBytes + payload_bytes(type, dim));
  out.push_back(static_cast<std::uint8_t>(type));
  put_u32(out, static_cast<std::uint32_t>(dim));
  return out;
}

}  // namespace

std::vector<std::uint8_t> serialize(const FeatureVector& v) {
  auto out = header(ElementType::kFloat, v.dim());
  for (float x : v.values()) put_u32(out, std::bit_cast<std::uint32_t>(x));
  return out;
}

std::vector<std::uint8_t> serialize(const BitVector& v) {
  auto out = header(ElementType::kBit, v.dim());
  const std::size_t nbytes = payload_bytes(ElementType::kBit, v.dim());
  const auto words = v.words();
  for (std::size_t b = 0; b < nbytes; ++b) {
    out.push_back(static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8))));
  }
  return out;
}

std::vector<std::uint8_t> serialize(const AnyVector& v) {
  return std::visit([](const auto& x) { return serialize(x); }, v);
}

Decoded deserialize_prefix(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kVectorMagic.size() ||
      !std::equal(kVectorMagic.begin(), kVectorMagic.end(), bytes.begin())) {
    throw ParseError(ParseError::Kind::kBadMagic, "vector record: bad magic");
  }
  if (bytes.size() < kRecordHeaderBytes) {
    throw ParseError(ParseError::Kind::kTruncated, "vector record: truncated header");
  }
  const std::uint8_t tag = bytes[4];
  if (tag != static_cast<std::uint8_t>(ElementType::kFloat) &&
      tag != static_cast<std::uint8_t>(ElementType::kBit)) {
    throw ParseError(ParseError::Kind::kUnknownTag,
                     "vector record: unknown type tag " + std::to_string(tag));
  }
  const auto type = static_cast<ElementType>(tag);
  const std::size_t dim = get_u32(bytes.data() + 5);
  if (dim == 0) {
    throw ParseError(ParseError::Kind::kBadDimension, "vector record: dim is zero");
  }
  const std::size_t need = payload_bytes(type, dim);
  if (bytes.size() - kRecordHeaderBytes < need) {
    throw ParseError(ParseError::Kind::kTruncated,
                     "vector record: payload truncated, need " + std::to_string(need) + " bytes");
  }
  const std::uint8_t* payload = bytes.data() + kRecordHeaderBytes;

  if (type == ElementType::kFloat) {
    std::vector<float> values(dim);
    for (std::size_t i = 0; i < dim; ++i) values[i] = std::bit_cast<float>(get_u32(payload + 4 * i));
    return {FeatureVector(std::move(values)), kRecordHeaderBytes + need};
  }

  if (const std::size_t tail = dim % 8; tail != 0 && (payload[need - 1] >> tail) != 0) {
    throw ParseError(ParseError::Kind::kBadPadding, "vector record: nonzero padding bits");
  }
  std::vector<BitVector::Word> words(BitVector::words_for(dim), 0);
  for (std::size_t b = 0; b < need; ++b) {
    words[b / 8] |= static_cast<BitVector::Word>(payload[b]) << (8 * (b % 8));
  }
  return {BitVector(dim, std::move(words)), kRecordHeaderBytes + need};
}

AnyVector deserialize(std::span<const std::uint8_t> bytes) {
  auto decoded = deserialize_prefix(bytes);
  if (decoded.bytes_read != bytes.size()) {
    throw ParseError(ParseError::Kind::kTrailingBytes, "vector record: trailing bytes after payload");
  }
  return std::move(decoded.vector);
}

}  // namespace bithash
