// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#include "bithash/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace bithash {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string percent(double v) { return fixed(100.0 * v, 2) + "%"; }

// 32000 -> "32,000"
std::string grouped(std::size_t v) {
  std::string digits = std::to_string(v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const EvalReport& report) {
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << csv_field(r.label) << ',' << r.spec.hash.dim << ',' << r.size_bytes << ','
        << fixed(r.time_sec, 6) << ',' << fixed(r.top1, 4) << ',' << fixed(r.top5, 4) << ','
        << fixed(r.top10, 4) << ',' << fixed(r.mean_comparisons, 4) << ','
        << fixed(r.mean_density, 6) << '\n';
  }
}

void write_table(std::ostream& out, const EvalReport& report,
                 const std::vector<std::string>& preamble) {
  for (const auto& line : preamble) out << "<!-- " << line << " -->\n";
  if (!preamble.empty()) out << '\n';

  const std::vector<std::string> head = {"type",  "dim",   "size(byte)", "vectorize(sec)",
                                         "time(sec)", "1-top", "5-top",  "10-top",
                                         "comparisons", "density"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : report.rows) {
    rows.push_back({r.label, grouped(r.spec.hash.dim), grouped(r.size_bytes),
                    fixed(r.vectorize_sec, 3) + "s", fixed(r.time_sec, 3) + "s", percent(r.top1),
                    percent(r.top5), percent(r.top10), fixed(r.mean_comparisons, 1),
                    fixed(r.mean_density, 4)});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    out << '|';
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << ' ' << cells[c] << std::string(width[c] - cells[c].size(), ' ') << " |";
    }
    out << '\n';
  };
  emit(head);
  out << '|';
  for (std::size_t c = 0; c < head.size(); ++c) out << std::string(width[c] + 2, '-') << '|';
  out << '\n';
  for (const auto& row : rows) emit(row);
}

}  // namespace bithash
