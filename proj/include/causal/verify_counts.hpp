#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causal/common.hpp"

namespace causal {

struct CountCheck {
    std::string label;
    std::uint64_t expected = 0;
    std::uint64_t actual = 0;
    bool ok() const { return expected == actual; }
};

struct CountReport {
    std::vector<CountCheck> checks;
    bool all_ok() const;
    std::string table() const;
};

/// Runs the score-evaluation counter against the closed-form worst-case
/// counts for every p in [4, max_p]: no knowledge, every single known edge,
/// every single forbidden pair, every source/sink 3-tier partition, and 20
/// seeded random tier partitions checked against the general tier formula.
/// Counts are exact integer equalities.
CountReport verify_counts(int max_p, std::uint64_t seed = 7, int threads = 0);

}  // namespace causal
