#include "causal/equivalence.hpp"

#include <string>

namespace causal {

namespace {

// One pass of Meek's orientation rules; returns true if any edge was
// oriented. R4 only ever fires after background-knowledge orientations, so
// dag_to_cpdag runs with use_r4 = false.
bool meek_pass(Cpdag& g, bool use_r4) {
    const int p = g.p();
    bool changed = false;

    auto orient = [&](int i, int j) {
        g.set_directed(i, j);
        changed = true;
    };

    // R1: a -> b, b - c, a not adjacent to c  =>  b -> c.
    for (int b = 0; b < p; ++b)
        for (int c = 0; c < p; ++c) {
            if (b == c || !g.undirected(b, c)) continue;
            for (int a = 0; a < p; ++a)
                if (a != b && a != c && g.directed(a, b) && !g.adjacent(a, c)) {
                    orient(b, c);
                    break;
                }
        }

    // R2: a -> b -> c, a - c  =>  a -> c.
    for (int a = 0; a < p; ++a)
        for (int c = 0; c < p; ++c) {
            if (a == c || !g.undirected(a, c)) continue;
            for (int b = 0; b < p; ++b)
                if (b != a && b != c && g.directed(a, b) && g.directed(b, c)) {
                    orient(a, c);
                    break;
                }
        }

    // R3: a - b, a - c, a - d, c -> b, d -> b, c not adjacent to d  =>  a -> b.
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) {
            if (a == b || !g.undirected(a, b)) continue;
            bool fired = false;
            for (int c = 0; c < p && !fired; ++c) {
                if (c == a || c == b || !g.undirected(a, c) || !g.directed(c, b)) continue;
                for (int d = c + 1; d < p; ++d) {
                    if (d == a || d == b) continue;
                    if (g.undirected(a, d) && g.directed(d, b) && !g.adjacent(c, d)) {
                        orient(a, b);
                        fired = true;
                        break;
                    }
                }
            }
        }

    // R4: a - b, a - c, c -> d -> b, c not adjacent to b  =>  a -> b.
    if (use_r4)
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                if (a == b || !g.undirected(a, b)) continue;
                bool fired = false;
                for (int c = 0; c < p && !fired; ++c) {
                    if (c == a || c == b || !g.undirected(a, c) || g.adjacent(c, b)) continue;
                    for (int d = 0; d < p; ++d) {
                        if (d == a || d == b || d == c) continue;
                        if (g.directed(c, d) && g.directed(d, b)) {
                            orient(a, b);
                            fired = true;
                            break;
                        }
                    }
                }
            }

    return changed;
}

void close_under_meek(Cpdag& g, bool use_r4) {
    while (meek_pass(g, use_r4)) {
    }
}

}  // namespace

Cpdag dag_to_cpdag(const Dag& dag) {
    Cpdag g(dag.p);
    for (int j = 0; j < dag.p; ++j)
        for (Mask rest = dag.parents[j]; rest; rest &= rest - 1)
            g.set_undirected(lowest_bit(rest), j);
    for (const auto& [a, b, c] : v_structures(dag)) {
        g.set_directed(a, b);
        g.set_directed(c, b);
    }
    close_under_meek(g, /*use_r4=*/false);
    return g;
}

Cpdag meek_closure(const Cpdag& cpdag, const Knowledge& knowledge) {
    if (knowledge.p != cpdag.p())
        throw ValidationError("knowledge and graph have different variable counts");
    Cpdag g = cpdag;

    for (const auto& [from, to] : knowledge.known) {
        if (g.directed(from, to)) continue;
        if (g.undirected(from, to)) {
            g.set_directed(from, to);
        } else {
            throw ValidationError("known edge " + std::to_string(from) + " -> " +
                                  std::to_string(to) +
                                  (g.directed(to, from) ? " is directed the wrong way in the graph"
                                                        : " is absent from the graph"));
        }
    }
    for (const auto& [a, b] : knowledge.forbidden)
        if (g.adjacent(a, b))
            throw ValidationError("forbidden pair " + std::to_string(a) + " - " +
                                  std::to_string(b) + " is adjacent in the graph");

    for (int i = 0; i < g.p(); ++i) {
        const auto ti = knowledge.tier_of(i);
        if (!ti) continue;
        for (int j = 0; j < g.p(); ++j) {
            const auto tj = knowledge.tier_of(j);
            if (!tj || *ti >= *tj) continue;
            if (g.undirected(i, j)) g.set_directed(i, j);
            else if (g.directed(j, i))
                throw ValidationError("edge " + std::to_string(j) + " -> " + std::to_string(i) +
                                      " contradicts the tier order");
        }
    }

    close_under_meek(g, /*use_r4=*/true);
    if (!g.directed_part_acyclic())
        throw ValidationError("knowledge orientations force a directed cycle");
    return g;
}

Cpdag modified_cpdag(const Dag& dag, const Knowledge& knowledge) {
    return meek_closure(dag_to_cpdag(dag), knowledge);
}

int shd(const Cpdag& a, const Cpdag& b) {
    if (a.p() != b.p()) throw ValidationError("graphs have different variable counts");
    int distance = 0;
    for (int i = 0; i < a.p(); ++i)
        for (int j = i + 1; j < a.p(); ++j)
            if (a.mark(i, j) != b.mark(i, j) || a.mark(j, i) != b.mark(j, i)) ++distance;
    return distance;
}

double shd_scaled(const Cpdag& a, const Cpdag& b) {
    const int pairs = a.p() * (a.p() - 1) / 2;
    if (pairs == 0) return 0.0;
    return static_cast<double>(shd(a, b)) / pairs;
}

}  // namespace causal
