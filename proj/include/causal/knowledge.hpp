#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causal/graph.hpp"

namespace causal {

/// Validated expert domain knowledge over p variables:
///   known      - directed edges that must appear in the output,
///   forbidden  - unordered pairs that may not be adjacent in either direction,
///   tiers      - ordered partition of (a subset of) the variables; a variable
///                in a later tier can never be the parent of one in an earlier
///                tier, while same-tier edges stay unconstrained.
///
/// Variables left out of every tier are unconstrained by the tier order.
struct Knowledge {
    int p = 0;
    std::vector<std::pair<int, int>> known;      // from -> to
    std::vector<std::pair<int, int>> forbidden;  // stored with first < second
    std::vector<std::vector<int>> tiers;

    static Knowledge none(int p) { return Knowledge{p, {}, {}, {}}; }

    bool empty() const { return known.empty() && forbidden.empty() && tiers.empty(); }
    bool tiers_cover_all() const;

    /// Tier index of a variable, if it has one.
    std::optional<int> tier_of(int v) const;
};

/// Checks consistency and returns the normalized Knowledge. Rules enforced:
/// no pair both known and forbidden, known edges acyclic, tiers disjoint,
/// and no known edge pointing from a later tier into an earlier one.
Knowledge make_knowledge(int p, std::vector<std::pair<int, int>> known,
                         std::vector<std::pair<int, int>> forbidden,
                         std::vector<std::vector<int>> tiers);

/// Parses the knowledge JSON document:
///   {"known": [[from,to],...], "forbidden": [[a,b],...], "tiers": [[names,...],...]}
/// All entries are variable names; an empty document yields empty Knowledge.
Knowledge parse_knowledge(const std::string& json_text, const std::vector<std::string>& names);

/// Every pair absent from the symmetric super-structure adjacency becomes a
/// forbidden pair. A known edge crossing an absent pair is an error.
Knowledge merge_super_structure(const Knowledge& knowledge,
                                const std::vector<std::uint8_t>& adjacency);

/// Loads a super-structure file: either a CSV 0/1 matrix with a header row and
/// a leading name column, or JSON {"edges": [[a,b],...]}. Returns the p x p
/// symmetric adjacency in the order of `names`.
std::vector<std::uint8_t> load_super_structure(const std::string& path,
                                               const std::vector<std::string>& names);

/// Knowledge compiled to per-variable parent-set predicates: a parent set S of
/// `target` is allowed iff required[target] is contained in S and S avoids
/// banned[target]. This is the pruning applied to every parent lattice.
struct AllowedSets {
    int p = 0;
    std::vector<Mask> required;
    std::vector<Mask> banned;

    bool allowed(int target, Mask parents) const {
        return (required[target] & ~parents) == 0 && (parents & banned[target]) == 0;
    }
    /// Number of allowed parent sets of `target`: 2^(p-1-|required|-|banned|).
    std::uint64_t allowed_count(int target) const;
};

AllowedSets compile_allowed(const Knowledge& knowledge);

/// True iff the DAG satisfies every constraint in the knowledge.
bool satisfies_knowledge(const Dag& dag, const Knowledge& knowledge);

/// Worst-case score-evaluation count implied by the knowledge: the closed
/// forms for the analyzed cases (no knowledge, one known edge, one forbidden
/// edge, a full tier partition) and the per-variable product formula
/// sum_i 2^(p-1-|required_i|-|banned_i|) for anything else.
std::uint64_t predicted_eval_count(int p, const Knowledge& knowledge);
std::uint64_t predicted_eval_count(const AllowedSets& allowed);

}  // namespace causal
