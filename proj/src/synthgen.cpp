#include "causal/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <numeric>

namespace causal {

std::uint64_t mix_seed(std::uint64_t state, std::uint64_t salt) {
    std::uint64_t z = state + 0x9e3779b97f4a7c15ULL + salt;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::uint64_t Rng::below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

double Rng::normal(double mean, double stddev) {
    // Box-Muller; u1 shifted away from zero for the log.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Dag sample_er_dag(int p, double avg_degree, std::uint64_t seed) {
    if (p < 2 || p > kMaxVariables)
        throw ValidationError("sample_er_dag requires 2 <= p <= 64");
    if (avg_degree < 0) throw ValidationError("average degree must be nonnegative");
    double q = avg_degree / (p - 1);
    if (q > 1.0) {
        std::cerr << "warning: average degree " << avg_degree << " needs edge probability "
                  << q << "; clamping to 1\n";
        q = 1.0;
    }

    Rng rng = Rng::derived(seed, {0x6572646f73ULL});
    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<Mask> parents(p, 0);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (rng.uniform01() < q) parents[order[j]] |= bit(order[i]);
    return make_dag(p, std::move(parents));
}

SemModel sample_sem(const Dag& dag, std::uint64_t seed) {
    Rng rng = Rng::derived(seed, {0x73656dULL});
    SemModel sem;
    sem.dag = dag;
    sem.weights.resize(dag.p);
    for (int i = 0; i < dag.p; ++i)
        for (Mask rest = dag.parents[i]; rest; rest &= rest - 1) {
            const double sign = rng.coin() ? 1.0 : -1.0;
            sem.weights[i].push_back(sign * rng.uniform(0.2, 0.8));
        }
    sem.noise_std.resize(dag.p);
    for (int i = 0; i < dag.p; ++i) sem.noise_std[i] = rng.uniform(1.0, 2.0);
    return sem;
}

std::vector<std::vector<double>> simulate_columns(const SemModel& sem, int n, std::uint64_t seed) {
    if (n < 1) throw ValidationError("need at least one observation");
    const int p = sem.dag.p;
    Rng rng = Rng::derived(seed, {0x73696dULL});
    std::vector<std::vector<double>> columns(p, std::vector<double>(n, 0.0));

    for (int v : topological_order(sem.dag)) {
        auto& col = columns[v];
        const double sd = sem.noise_std[v];
        for (int r = 0; r < n; ++r) col[r] = rng.normal(0.0, sd);
        int slot = 0;
        for (Mask rest = sem.dag.parents[v]; rest; rest &= rest - 1, ++slot) {
            const int parent = lowest_bit(rest);
            const double w = sem.weights[v][slot];
            const auto& source = columns[parent];
            for (int r = 0; r < n; ++r) col[r] += w * source[r];
        }
    }
    return columns;
}

std::vector<std::string> default_names(int p) {
    std::vector<std::string> names;
    names.reserve(p);
    for (int i = 1; i <= p; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

Dataset simulate(const SemModel& sem, int n, std::uint64_t seed) {
    return dataset_from_columns(default_names(sem.dag.p), simulate_columns(sem, n, seed));
}

const char* to_string(KnowledgeKind kind) {
    switch (kind) {
        case KnowledgeKind::None: return "none";
        case KnowledgeKind::Known: return "known";
        case KnowledgeKind::Forbidden: return "forbidden";
        case KnowledgeKind::Tiers: return "tiers";
    }
    return "?";
}

KnowledgeKind knowledge_kind_from_string(const std::string& text) {
    if (text == "none") return KnowledgeKind::None;
    if (text == "known") return KnowledgeKind::Known;
    if (text == "forbidden") return KnowledgeKind::Forbidden;
    if (text == "tiers") return KnowledgeKind::Tiers;
    throw ValidationError("unknown knowledge kind '" + text +
                          "' (expected none, known, forbidden or tiers)");
}

Knowledge sample_knowledge(const Dag& dag, KnowledgeKind kind, std::uint64_t seed) {
    const int p = dag.p;
    Rng rng = Rng::derived(seed, {0x6b6e6f77ULL, static_cast<std::uint64_t>(kind)});

    switch (kind) {
        case KnowledgeKind::None:
            return Knowledge::none(p);

        case KnowledgeKind::Known: {
            std::vector<std::pair<int, int>> edges;
            for (int child = 0; child < p; ++child)
                for (Mask rest = dag.parents[child]; rest; rest &= rest - 1)
                    edges.emplace_back(lowest_bit(rest), child);
            if (edges.empty())
                throw ValidationError("cannot sample a known edge: the graph has no edges");
            const auto& [from, to] = edges[rng.below(edges.size())];
            return make_knowledge(p, {{from, to}}, {}, {});
        }

        case KnowledgeKind::Forbidden: {
            std::vector<std::pair<int, int>> gaps;
            for (int i = 0; i < p; ++i)
                for (int j = i + 1; j < p; ++j)
                    if (!dag.has_edge(i, j) && !dag.has_edge(j, i)) gaps.emplace_back(i, j);
            if (gaps.empty())
                throw ValidationError("cannot sample a forbidden edge: every pair is adjacent");
            const auto& [a, b] = gaps[rng.below(gaps.size())];
            return make_knowledge(p, {}, {{a, b}}, {});
        }

        case KnowledgeKind::Tiers: {
            std::vector<int> sources, sinks;
            std::vector<bool> has_child(p, false);
            for (int child = 0; child < p; ++child)
                for (Mask rest = dag.parents[child]; rest; rest &= rest - 1)
                    has_child[lowest_bit(rest)] = true;
            for (int i = 0; i < p; ++i) {
                if (dag.parents[i] == 0) sources.push_back(i);
                if (!has_child[i]) sinks.push_back(i);
            }
            if (sources.empty())
                throw ValidationError("cannot sample tiers: the graph has no source variable");
            const int source = sources[rng.below(sources.size())];
            std::erase(sinks, source);
            if (sinks.empty())
                throw ValidationError("cannot sample tiers: no sink distinct from the source");
            const int sink = sinks[rng.below(sinks.size())];

            std::vector<int> middle;
            for (int i = 0; i < p; ++i)
                if (i != source && i != sink) middle.push_back(i);
            std::vector<std::vector<int>> tiers;
            tiers.push_back({source});
            if (!middle.empty()) tiers.push_back(std::move(middle));
            tiers.push_back({sink});
            return make_knowledge(p, {}, {}, std::move(tiers));
        }
    }
    throw std::logic_error("unreachable knowledge kind");
}

}  // namespace causal
