#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graceful/rng.hpp"

namespace graceful {

// One verification summary per tree order.
struct StatsRow {
    int n = 0;
    long long trees = 0;
    long long backtracking = 0;  // stage-1 successes
    long long remainder = 0;     // trees handed to stage 2
    long long failures = 0;
    double ratio = 0.0;   // remainder / trees
    double time_s = 0.0;  // summed per-tree wall time
    double avg_ms = 0.0;
};

inline constexpr const char* kStatsCsvHeader =
    "n,trees,backtracking,remainder,ratio,time_s,avg_ms,failures";

inline void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows) {
    out << kStatsCsvHeader << '\n';
    char buf[64];
    for (const StatsRow& r : rows) {
        out << r.n << ',' << r.trees << ',' << r.backtracking << ',' << r.remainder << ',';
        std::snprintf(buf, sizeof buf, "%.6g", r.ratio);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.3f", r.time_s);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.4f", r.avg_ms);
        out << buf << ',' << r.failures << '\n';
    }
}

inline void write_stats_json(std::ostream& out, const std::vector<StatsRow>& rows,
                             std::uint64_t seed) {
    nlohmann::json doc;
    doc["rng"] = SplitMix64::name();
    doc["seed"] = seed;
    doc["rows"] = nlohmann::json::array();
    for (const StatsRow& r : rows) {
        doc["rows"].push_back({{"n", r.n},
                               {"trees", r.trees},
                               {"backtracking", r.backtracking},
                               {"remainder", r.remainder},
                               {"ratio", r.ratio},
                               {"time_s", r.time_s},
                               {"avg_ms", r.avg_ms},
                               {"failures", r.failures}});
    }
    out << doc.dump(2) << '\n';
}

}  // namespace graceful
