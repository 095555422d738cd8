// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bithash/experiment.hpp"

namespace bithash {

inline constexpr std::string_view kCsvHeader =
    "type,dim,size_bytes,time_sec,top1,top5,top10,mean_comparisons,mean_density";

/// Machine-readable report: kCsvHeader, then one row per method.
/// Accuracies are fractions with 4 decimals.
void write_csv(std::ostream& out, const EvalReport& report);

/// Markdown table with percentages. `preamble` lines are written first as
/// a run header (resolved config, version).
void write_table(std::ostream& out, const EvalReport& report,
                 const std::vector<std::string>& preamble = {});

}  // namespace bithash
