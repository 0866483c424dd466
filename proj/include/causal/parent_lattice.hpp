#pragma once

#include <utility>
#include <vector>

#include "causal/knowledge.hpp"
#include "causal/scoring.hpp"

namespace causal {

/// Pruned parent lattice of one target variable. Construction regresses each
/// allowed parent set exactly once (disallowed sets are never regressed, which
/// is where the knowledge saves work), then fills a subset-minimum table over
/// the full 2^(p-1) candidate lattice:
///
///   best(U) = min( score(U) if allowed else +inf,
///                  min over j in U of best(U \ {j}) )
///
/// so best(U) answers "cheapest allowed parent set drawn from U" in O(1).
/// Ties prefer smaller cardinality, then smaller mask value.
class ParentLattice {
public:
    ParentLattice(int target, const AllowedSets& allowed, ScoreTable& table);

    int target() const { return target_; }
    Mask others() const { return others_; }

    /// (best score, argmin parent set) over allowed subsets of candidate_mask;
    /// (+inf, 0) when no allowed subset exists (a required parent is missing).
    std::pair<double, Mask> best(Mask candidate_mask) const;

private:
    Mask compress(Mask full) const;

    int target_ = 0;
    int p_ = 0;
    Mask others_ = 0;
    std::vector<double> best_score_;
    std::vector<Mask> best_set_;  // argmin stored as a full-width mask
};

/// Builds every variable's lattice, optionally in parallel (each worker owns
/// one variable's cache slot in the score table).
std::vector<ParentLattice> build_all_lattices(const AllowedSets& allowed, ScoreTable& table,
                                              int threads = 0);

}  // namespace causal
