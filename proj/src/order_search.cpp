#include "causal/order_search.hpp"

#include <iostream>

namespace causal {

bool SearchFrontier::push(const OrderNode& node) {
    auto [it, fresh] = best_g_.try_emplace(node.subset, node.g);
    if (!fresh) {
        if (it->second <= node.g) return false;
        it->second = node.g;
    }
    heap_.push(node);
    return true;
}

std::optional<OrderNode> SearchFrontier::pop() {
    while (!heap_.empty()) {
        OrderNode node = heap_.top();
        heap_.pop();
        if (best_g_.at(node.subset) < node.g) continue;  // superseded entry
        return node;
    }
    return std::nullopt;
}

DiscoveryResult astar_over_lattices(const std::vector<ParentLattice>& lattices,
                                    const Knowledge& knowledge, ScoreTable& table) {
    const int p = static_cast<int>(lattices.size());
    const Mask goal = full_mask(p);

    // Unconstrained optimum of each variable; finite because the required
    // parents are always inside the full candidate pool. The estimate for a
    // subset is summed in ascending variable order so equal subsets carry
    // bit-identical h regardless of the path that generated them.
    std::vector<double> h_base(p);
    for (int i = 0; i < p; ++i) h_base[i] = lattices[i].best(lattices[i].others()).first;
    auto estimate = [&](Mask placed) {
        double h = 0.0;
        for (Mask rest = goal & ~placed; rest; rest &= rest - 1) h += h_base[lowest_bit(rest)];
        return h;
    };

    struct PathEntry {
        double g;
        int chosen_var;
        Mask chosen_parents;
        Mask back;
    };
    std::unordered_map<Mask, PathEntry> path;
    std::unordered_map<Mask, double> expanded_at;

    SearchFrontier frontier;
    frontier.push({0, 0.0, estimate(0), -1, 0, 0});
    path[0] = {0.0, -1, 0, 0};

    DiscoveryResult result;
    bool found = false;
    while (auto node = frontier.pop()) {
        if (auto it = expanded_at.find(node->subset);
            it != expanded_at.end() && it->second <= node->g)
            continue;
        expanded_at[node->subset] = node->g;

        if (node->subset == goal) {
            found = true;
            result.total_score = node->g;
            break;
        }
        ++result.expanded_nodes;

        for (Mask rest = goal & ~node->subset; rest; rest &= rest - 1) {
            const int x = lowest_bit(rest);
            const auto [cost, parent_set] = lattices[x].best(node->subset);
            if (is_inf_score(cost)) continue;  // a required parent is not placed yet
            OrderNode next;
            next.subset = node->subset | bit(x);
            next.g = node->g + cost;
            next.h = estimate(next.subset);
            next.chosen_var = x;
            next.chosen_parents = parent_set;
            next.back = node->subset;
            if (frontier.push(next))
                path[next.subset] = {next.g, x, parent_set, node->subset};
        }
    }
    if (!found) throw std::logic_error("order search exhausted the frontier without reaching the goal");

    std::vector<Mask> parents(p, 0);
    for (Mask at = goal; at != 0;) {
        const PathEntry& entry = path.at(at);
        parents[entry.chosen_var] = entry.chosen_parents;
        at = entry.back;
    }
    result.dag = make_dag(p, std::move(parents));
    result.eval_count = table.eval_count();

    if (!satisfies_knowledge(result.dag, knowledge))
        throw std::logic_error("discovered DAG violates the domain knowledge");
    return result;
}

DiscoveryResult astar_discover(const Dataset& data, const Knowledge& knowledge, int threads) {
    if (data.p != knowledge.p)
        throw ValidationError("knowledge is over " + std::to_string(knowledge.p) +
                              " variables but the dataset has " + std::to_string(data.p));
    if (data.p > 25)
        std::cerr << "warning: exact search over " << data.p
                  << " variables may take very long and use a lot of memory\n";

    const auto start = std::chrono::steady_clock::now();
    const AllowedSets allowed = compile_allowed(knowledge);
    ScoreTable table(data);
    const auto lattices = build_all_lattices(allowed, table, threads);
    DiscoveryResult result = astar_over_lattices(lattices, knowledge, table);
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

}  // namespace causal
