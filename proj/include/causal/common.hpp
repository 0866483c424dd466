#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace causal {

// Variable subsets are 64-bit masks; anything larger is rejected at ingestion.
using Mask = std::uint64_t;

inline constexpr int kMaxVariables = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }

constexpr bool has_bit(Mask m, int i) { return (m >> i) & 1; }

constexpr Mask full_mask(int p) {
    return p >= kMaxVariables ? ~Mask{0} : (Mask{1} << p) - 1;
}

inline int popcount(Mask m) { return std::popcount(m); }

inline int lowest_bit(Mask m) { return std::countr_zero(m); }

// Score sentinel for pruned-away / unreachable parent sets. Never enters a
// sum: callers must test before adding.
inline constexpr double kInfScore = std::numeric_limits<double>::infinity();

inline bool is_inf_score(double s) { return s == kInfScore; }

// Bad user input: malformed files, conflicting knowledge, dimension mismatch.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failures.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace causal
