#pragma once

#include "causal/knowledge.hpp"
#include "causal/scoring.hpp"

namespace causal {

/// Brute-force reference: enumerates every acyclic parent-mask assignment
/// consistent with the knowledge and returns the total-BIC minimum. Ties use
/// the lattice rule per total (score, edge count), then the lexicographically
/// smallest parent-mask vector. Refuses p > 5.
std::pair<Dag, double> exhaustive_best_dag(const Dataset& data, const Knowledge& knowledge);

/// Direct scan over every subset of candidate_mask with the lattice tie rule;
/// the reference that certifies the subset-minimum table. p <= 12.
std::pair<double, Mask> exhaustive_best_subset(ScoreTable& table, int target,
                                               const AllowedSets& allowed, Mask candidate_mask);

}  // namespace causal
