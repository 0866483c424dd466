#pragma once

#include <chrono>
#include <optional>
#include <queue>
#include <unordered_map>

#include "causal/parent_lattice.hpp"

namespace causal {

/// A* state over the order graph: the set of already-placed variables plus
/// the bookkeeping needed to decode the chosen DAG from the goal.
struct OrderNode {
    Mask subset = 0;
    double g = 0.0;  // cost of the best known path to subset
    double h = 0.0;  // admissible estimate of the remaining cost
    int chosen_var = -1;
    Mask chosen_parents = 0;
    Mask back = 0;  // predecessor subset

    double f() const { return g + h; }
};

/// Priority frontier keyed by f = g + h. Pops the minimum f; ties prefer the
/// deeper node (larger g), then the smaller subset mask. A push that does not
/// strictly improve the best known g of its subset is ignored; stale heap
/// entries are skipped on pop.
class SearchFrontier {
public:
    bool push(const OrderNode& node);
    std::optional<OrderNode> pop();
    bool empty() const { return heap_.empty(); }

private:
    struct Worse {
        bool operator()(const OrderNode& a, const OrderNode& b) const {
            if (a.f() != b.f()) return a.f() > b.f();
            if (a.g != b.g) return a.g < b.g;
            return a.subset > b.subset;
        }
    };
    std::priority_queue<OrderNode, std::vector<OrderNode>, Worse> heap_;
    std::unordered_map<Mask, double> best_g_;
};

struct DiscoveryResult {
    Dag dag;
    double total_score = 0.0;
    std::uint64_t eval_count = 0;
    std::uint64_t expanded_nodes = 0;
    std::chrono::duration<double, std::milli> wall_time{0};
};

/// Exact search for the BIC-optimal DAG consistent with the knowledge. Builds
/// the pruned parent lattices (in parallel across variables), then runs A*
/// over variable subsets from the empty set to the full set. The heuristic
/// relaxes acyclicity: each unplaced variable contributes its best allowed
/// score over all other variables, which never overestimates because
/// restricting the candidate pool cannot lower a lattice minimum.
DiscoveryResult astar_discover(const Dataset& data, const Knowledge& knowledge, int threads = 0);

/// Search over prebuilt lattices; `table` is only consulted for the final
/// eval count. Exposed for callers that reuse lattices.
DiscoveryResult astar_over_lattices(const std::vector<ParentLattice>& lattices,
                                    const Knowledge& knowledge, ScoreTable& table);

}  // namespace causal
