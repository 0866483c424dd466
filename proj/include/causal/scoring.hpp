#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "causal/dataset.hpp"

namespace causal {

/// BIC local score of one (variable, parent set) pair. Lower is better.
/// value = k * ln(N) + N * ln(rss / N), k = |parent set|. A singular normal
/// system (collinear parents) yields the +inf sentinel.
struct LocalScore {
    double value = 0.0;
    double rss = 0.0;
    int k = 0;

    bool infinite() const { return is_inf_score(value); }
};

/// Per-variable score cache plus the evaluation counter behind the
/// closed-form worst-case counts: a (variable, mask) pair is regressed at
/// most once, and every distinct regression (including the empty set and
/// singular systems) counts exactly one evaluation.
///
/// Distinct target variables may be scored from different threads; each
/// variable owns its cache and counter, and the global count is the sum taken
/// after workers finish.
class ScoreTable {
public:
    explicit ScoreTable(const Dataset& data);

    const LocalScore& bic_score(int target, Mask parents);

    std::uint64_t eval_count(int target) const { return evals_[target]; }
    std::uint64_t eval_count() const;

    /// Clears caches and zeroes all counters.
    void reset_counter();

    const Dataset& data() const { return *data_; }

private:
    const Dataset* data_;
    std::vector<std::unordered_map<Mask, LocalScore>> cache_;
    std::vector<std::uint64_t> evals_;
};

/// In-place LLT solve of the symmetric positive-definite system a * x = b
/// (k x k row-major). Returns false when a pivot falls below tolerance
/// relative to the largest diagonal entry, i.e. the system is singular.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, int k);

}  // namespace causal
