#include "causal/graph.hpp"

#include <algorithm>

namespace causal {

int Dag::edge_count() const {
    int count = 0;
    for (Mask m : parents) count += popcount(m);
    return count;
}

bool is_acyclic(std::span<const Mask> parents) {
    const int p = static_cast<int>(parents.size());
    Mask remaining = full_mask(p);
    for (int round = 0; round < p; ++round) {
        Mask removable = 0;
        for (Mask rest = remaining; rest; rest &= rest - 1) {
            const int i = lowest_bit(rest);
            if ((parents[i] & remaining) == 0) removable |= bit(i);
        }
        if (removable == 0) return remaining == 0;
        remaining &= ~removable;
    }
    return remaining == 0;
}

Dag make_dag(int p, std::vector<Mask> parents) {
    if (p < 0 || p > kMaxVariables)
        throw ValidationError("variable count " + std::to_string(p) + " outside [0, 64]");
    if (static_cast<int>(parents.size()) != p)
        throw ValidationError("parent list size does not match variable count");
    for (int i = 0; i < p; ++i) {
        if (has_bit(parents[i], i))
            throw ValidationError("self-loop on variable " + std::to_string(i));
        if (parents[i] & ~full_mask(p))
            throw ValidationError("parent mask of variable " + std::to_string(i) +
                                  " references variables outside [0, p)");
    }
    if (!is_acyclic(parents)) throw ValidationError("parent masks contain a directed cycle");
    return Dag(p, std::move(parents));
}

std::vector<int> topological_order(const Dag& dag) {
    std::vector<int> order;
    order.reserve(dag.p);
    Mask placed = 0;
    const Mask all = full_mask(dag.p);
    while (placed != all) {
        int next = -1;
        for (Mask rest = all & ~placed; rest; rest &= rest - 1) {
            const int i = lowest_bit(rest);
            if ((dag.parents[i] & ~placed) == 0) {
                next = i;
                break;
            }
        }
        if (next < 0) throw ValidationError("topological_order: graph has a cycle");
        order.push_back(next);
        placed |= bit(next);
    }
    return order;
}

std::vector<VStructure> v_structures(const Dag& dag) {
    std::vector<VStructure> out;
    for (int b = 0; b < dag.p; ++b) {
        const Mask pa = dag.parents[b];
        for (Mask am = pa; am; am &= am - 1) {
            const int a = lowest_bit(am);
            for (Mask cm = am & (am - 1); cm; cm &= cm - 1) {
                const int c = lowest_bit(cm);
                if (!dag.has_edge(a, c) && !dag.has_edge(c, a)) out.push_back({a, b, c});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Cpdag Cpdag::from_dag_edges(const Dag& dag) {
    Cpdag g(dag.p);
    for (int j = 0; j < dag.p; ++j)
        for (Mask rest = dag.parents[j]; rest; rest &= rest - 1) g.set_directed(lowest_bit(rest), j);
    return g;
}

int Cpdag::edge_count() const {
    int count = 0;
    for (int i = 0; i < p_; ++i)
        for (int j = i + 1; j < p_; ++j)
            if (adjacent(i, j)) ++count;
    return count;
}

bool Cpdag::directed_part_acyclic() const {
    std::vector<Mask> parents(p_, 0);
    for (int i = 0; i < p_; ++i)
        for (int j = 0; j < p_; ++j)
            if (directed(i, j)) parents[j] |= bit(i);
    return is_acyclic(parents);
}

std::vector<VStructure> Cpdag::directed_v_structures() const {
    std::vector<VStructure> out;
    for (int b = 0; b < p_; ++b)
        for (int a = 0; a < p_; ++a) {
            if (!directed(a, b)) continue;
            for (int c = a + 1; c < p_; ++c) {
                if (c == b || !directed(c, b)) continue;
                if (!adjacent(a, c)) out.push_back({a, b, c});
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace causal
