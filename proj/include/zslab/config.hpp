#pragma once

#include <cstdint>
#include <string>

namespace zslab {

/// Knobs shared by the deciders, the enumeration kernels, and the CLI.
/// All caps are hard: exceeding one raises an error instead of degrading
/// the answer.
struct RunConfig {
    std::int64_t decider_cap = 40;            // max |S| for the +/- decider
    std::uint64_t node_budget = 200'000'000;  // enumeration node budget
    int threads = 1;
    std::int64_t exhaustive_bound = 16;  // max |S| for exhaustive verification
    std::int64_t davenport_bound = 16;   // max |G| for the Davenport search
    std::uint64_t seed = 12345;          // echoed into every report
    std::string format = "json";         // json | tsv | text
};

}  // namespace zslab
