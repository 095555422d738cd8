// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bithash {

/// Default character n-gram window.
inline constexpr std::size_t kDefaultNgram = 5;

/// An n-gram feature, UTF-8 encoded. Holds exactly n code points, or the
/// whole text when the text is shorter than n.
using NgramFeature = std::string;

/// Decodes UTF-8 into code points. Ill-formed sequences become U+FFFD, one
/// replacement per offending byte.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);

/// Simple one-to-one lowercase mapping. Covers ASCII, Latin-1, Latin
/// Extended-A, Greek and Cyrillic; other code points map to themselves.
char32_t to_lower(char32_t cp);

/// Lowercases, collapses whitespace runs to one space and trims both ends.
/// Punctuation and digits are kept.
std::string normalize(std::string_view title);

/// Overlapping character windows of length `n`, counted in code points.
/// Text shorter than `n` yields the whole text as a single feature; empty
/// text yields nothing. Throws std::invalid_argument when n == 0.
std::vector<NgramFeature> extract_ngrams(std::string_view text, std::size_t n = kDefaultNgram);

}  // namespace bithash
