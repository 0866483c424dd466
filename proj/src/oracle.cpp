#include "causal/oracle.hpp"

#include <array>

namespace causal {

namespace {

inline bool better_subset(double score, Mask set, double inc_score, Mask inc_set) {
    if (score != inc_score) return score < inc_score;
    const int c = popcount(set), ic = popcount(inc_set);
    if (c != ic) return c < ic;
    return set < inc_set;
}

}  // namespace

std::pair<double, Mask> exhaustive_best_subset(ScoreTable& table, int target,
                                               const AllowedSets& allowed, Mask candidate_mask) {
    if (allowed.p > 12) throw ValidationError("exhaustive_best_subset refuses p > 12");
    double best_score = kInfScore;
    Mask best_set = 0;
    // Walk every subset of candidate_mask, including the empty set.
    Mask subset = 0;
    while (true) {
        if (allowed.allowed(target, subset)) {
            const double score = table.bic_score(target, subset).value;
            if (!is_inf_score(score) &&
                (is_inf_score(best_score) || better_subset(score, subset, best_score, best_set))) {
                best_score = score;
                best_set = subset;
            }
        }
        if (subset == candidate_mask) break;
        subset = (subset - candidate_mask) & candidate_mask;
    }
    return {best_score, best_set};
}

std::pair<Dag, double> exhaustive_best_dag(const Dataset& data, const Knowledge& knowledge) {
    const int p = data.p;
    if (p > 5) throw ValidationError("exhaustive_best_dag refuses p > 5");
    if (knowledge.p != p) throw ValidationError("knowledge/dataset variable count mismatch");

    const AllowedSets allowed = compile_allowed(knowledge);
    ScoreTable table(data);

    // Score every allowed parent set of every variable once, up front.
    std::vector<std::vector<Mask>> masks(p);
    std::vector<std::vector<double>> scores(p);
    for (int i = 0; i < p; ++i) {
        const Mask others = full_mask(p) & ~bit(i);
        Mask subset = 0;
        while (true) {
            if (allowed.allowed(i, subset)) {
                masks[i].push_back(subset);
                scores[i].push_back(table.bic_score(i, subset).value);
            }
            if (subset == others) break;
            subset = (subset - others) & others;
        }
    }

    std::array<std::size_t, 5> choice{};
    std::vector<Mask> parents(p, 0), best_parents;
    double best_total = kInfScore;
    int best_edges = 0;

    while (true) {
        double total = 0.0;
        bool finite = true;
        for (int i = 0; i < p; ++i) {
            const double s = scores[i][choice[i]];
            if (is_inf_score(s)) {
                finite = false;
                break;
            }
            parents[i] = masks[i][choice[i]];
            total += s;
        }
        if (finite && is_acyclic(parents)) {
            int edges = 0;
            for (int i = 0; i < p; ++i) edges += popcount(parents[i]);
            bool take;
            if (best_parents.empty() || total < best_total) {
                take = true;
            } else if (total > best_total) {
                take = false;
            } else if (edges != best_edges) {
                take = edges < best_edges;
            } else {
                take = parents < best_parents;
            }
            if (take) {
                best_total = total;
                best_edges = edges;
                best_parents = parents;
            }
        }
        // Odometer over the per-variable allowed lists.
        int v = 0;
        while (v < p && ++choice[v] == masks[v].size()) choice[v++] = 0;
        if (v == p) break;
    }

    if (best_parents.empty()) throw std::logic_error("no knowledge-consistent DAG exists");
    return {make_dag(p, std::move(best_parents)), best_total};
}

}  // namespace causal
