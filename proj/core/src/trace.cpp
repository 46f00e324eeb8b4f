#include "amr/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace amr {

std::vector<TraceRecord> parse_trace(std::istream& in) {
    std::vector<TraceRecord> records;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        size_t comma = line.find(',');
        auto fail = [&](const std::string& msg) -> Error {
            return Error(Err::ConfigError, "trace line " + std::to_string(lineno) + ": " + msg);
        };
        if (comma == std::string::npos) throw fail("expected '<height>,<deposit|withdraw>'");
        std::string height_str = line.substr(0, comma);
        std::string kind = line.substr(comma + 1);
        if (height_str.empty()) throw fail("missing height");
        Height height = 0;
        for (char c : height_str) {
            if (c < '0' || c > '9') throw fail("bad height digit");
            height = height * 10 + (c - '0');
        }
        bool is_deposit;
        if (kind == "deposit") {
            is_deposit = true;
        } else if (kind == "withdraw") {
            is_deposit = false;
        } else {
            throw fail("unknown record kind '" + kind + "'");
        }
        if (!records.empty() && records.back().height > height)
            throw Error(Err::UnsortedTrace,
                        "trace line " + std::to_string(lineno) + ": heights decrease");
        records.push_back({height, is_deposit});
    }
    return records;
}

std::vector<TraceRecord> parse_trace_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Err::ConfigError, "cannot open trace file '" + path + "'");
    return parse_trace(f);
}

TraceAnalysis analyze_trace(const std::vector<TraceRecord>& records,
                            const std::vector<Height>& windows) {
    for (size_t i = 1; i < records.size(); ++i)
        if (records[i - 1].height > records[i].height)
            throw Error(Err::UnsortedTrace, "trace records must be sorted by height");

    TraceAnalysis analysis;
    uint64_t total_deposits = 0;
    int64_t gap = 0;
    for (const auto& rec : records) {
        if (rec.is_deposit) {
            ++total_deposits;
            ++gap;
        } else {
            --gap;
        }
        analysis.gap_series.emplace_back(rec.height, gap);
    }

    for (Height w : windows) {
        if (w == 0) throw Error(Err::BadConfig, "window size must be positive");
        WindowStat stat;
        stat.window = w;
        stat.deposits = total_deposits;
        if (!records.empty()) {
            Height first = records.front().height;
            Height last = records.back().height;
            stat.spans = (last - first) / w + 1; // tumbling spans from the first record
            stat.average = (double)total_deposits / (double)stat.spans;
        }
        analysis.windows.push_back(stat);
    }
    return analysis;
}

void write_trace_report(std::ostream& out, const TraceAnalysis& analysis) {
    out << "window spans deposits avg_deposits_per_span\n";
    for (const auto& w : analysis.windows) {
        std::ostringstream avg;
        avg.precision(6);
        avg << std::fixed << w.average;
        out << w.window << " " << w.spans << " " << w.deposits << " " << avg.str() << "\n";
    }
    out << "gap_series height cumulative_gap\n";
    for (const auto& [h, g] : analysis.gap_series) out << "gap " << h << " " << g << "\n";
}

} // namespace amr
