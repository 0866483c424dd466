#pragma once

#include "causal/knowledge.hpp"

namespace causal {

/// CPDAG of the DAG's Markov equivalence class: skeleton with v-structure
/// edges directed, everything else undirected, closed under Meek rules R1-R3.
Cpdag dag_to_cpdag(const Dag& dag);

/// The "modified CPDAG": orients every known edge and every undirected edge
/// that crosses from an earlier tier into a later one, then closes under Meek
/// rules R1-R4. Throws ValidationError when the knowledge contradicts the
/// graph (known edge absent or directed the wrong way, forbidden pair
/// adjacent, a directed edge against the tier order, or a directed cycle
/// forced by the orientations).
Cpdag meek_closure(const Cpdag& cpdag, const Knowledge& knowledge);

/// Convenience for the evaluation protocol: meek_closure(dag_to_cpdag(dag)).
Cpdag modified_cpdag(const Dag& dag, const Knowledge& knowledge);

/// Structural Hamming distance over unordered pairs: a pair costs 1 unless
/// its marks agree exactly (absent/absent, undirected/undirected, or directed
/// the same way).
int shd(const Cpdag& a, const Cpdag& b);

/// shd divided by the number of possible edges p(p-1)/2.
double shd_scaled(const Cpdag& a, const Cpdag& b);

}  // namespace causal
