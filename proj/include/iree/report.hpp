#pragma once

// CSV and human-readable rendering of sweep tables and single reports.

#include "iree/sweep.hpp"

#include <string>
#include <vector>

namespace iree {

inline constexpr const char* kCsvHeader =
    "axis,ee,aee,iee,iree_numeric,iree_closed,se,de,xi_numeric,xi_closed,"
    "c_tot,d_tot,p_tot,clamped";

// 9 significant digits, round-trip safe at that precision.
std::string format_number(double v);

// Header plus one line per row. Failed rows keep their axis value, carry
// "nan" in every metric cell, and "failed" in the clamped column.
std::string format_csv(const std::vector<SweepRow>& rows);

// Argmax row per metric column, then any failure messages.
std::string format_human(const std::vector<SweepRow>& rows);

// Name/value lines for a single evaluation.
std::string format_report(const MetricsReport& report);

void write_text(const std::string& path, const std::string& text);

} // namespace iree
