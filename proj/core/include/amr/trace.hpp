#pragma once

#include <iosfwd>
#include <vector>

#include "amr/errors.hpp"

namespace amr {

using Height = uint64_t;

/// One line of a deposit/withdraw trace file: `<height>,<deposit|withdraw>`.
struct TraceRecord {
    Height height = 0;
    bool is_deposit = true;
};

/// Parses a trace stream; heights must be non-decreasing.
/// ConfigError (with line number) on malformed lines, UnsortedTrace on
/// decreasing heights.
std::vector<TraceRecord> parse_trace(std::istream& in);
std::vector<TraceRecord> parse_trace_file(const std::string& path);

struct WindowStat {
    Height window = 0;        // span size in blocks
    uint64_t spans = 0;       // tumbling spans covering the trace
    uint64_t deposits = 0;    // total deposits counted
    double average = 0.0;     // deposits per span
};

struct TraceAnalysis {
    std::vector<WindowStat> windows;
    // Cumulative deposits - withdrawals after every record; the anonymity
    // gap hits zero whenever withdrawals have caught up with deposits.
    std::vector<std::pair<Height, int64_t>> gap_series;
};

/// Per-window average deposit counts over tumbling spans anchored at the
/// first record's height, plus the cumulative gap series.
TraceAnalysis analyze_trace(const std::vector<TraceRecord>& records,
                            const std::vector<Height>& windows); // UnsortedTrace, BadConfig

void write_trace_report(std::ostream& out, const TraceAnalysis& analysis);

} // namespace amr
