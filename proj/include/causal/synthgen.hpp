#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "causal/dataset.hpp"
#include "causal/knowledge.hpp"

namespace causal {

/// splitmix64 step; chains seeds into independent derived streams so parallel
/// benchmark repeats are order-independent.
std::uint64_t mix_seed(std::uint64_t state, std::uint64_t salt);

/// Seedable generator with all draw primitives spelled out, so bit-streams
/// are pinned by this code rather than by the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng derived(std::uint64_t base_seed, std::initializer_list<std::uint64_t> stream) {
        std::uint64_t s = mix_seed(base_seed, 0x9e3779b97f4a7c15ULL);
        for (std::uint64_t part : stream) s = mix_seed(s, part);
        return Rng(s);
    }

    double uniform01();                       // [0, 1)
    double uniform(double lo, double hi);     // [lo, hi)
    std::uint64_t below(std::uint64_t n);     // unbiased [0, n)
    bool coin() { return engine_() >> 63; }
    double normal(double mean, double stddev);

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i)
            std::swap(values[i - 1], values[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

/// Linear Gaussian structural equation model: x_i = sum_j w_j x_j + eps_i
/// with eps_i ~ Normal(0, noise_std[i]). weights[i] is aligned with the set
/// bits of dag.parents[i] in ascending order.
struct SemModel {
    Dag dag;
    std::vector<std::vector<double>> weights;
    std::vector<double> noise_std;
};

/// Erdos-Renyi DAG: a uniformly random permutation fixes the topological
/// order, then each forward pair appears independently with probability
/// avg_degree / (p - 1) (clamped to 1 with a warning).
Dag sample_er_dag(int p, double avg_degree, std::uint64_t seed);

/// |w| ~ U(0.2, 0.8) with a fair-coin sign; noise_std ~ U(1, 2).
SemModel sample_sem(const Dag& dag, std::uint64_t seed);

/// Raw (uncentered) sample columns, variables evaluated in topological order.
std::vector<std::vector<double>> simulate_columns(const SemModel& sem, int n, std::uint64_t seed);

/// Samples and packages as a scored-ready Dataset with names x1..xp.
Dataset simulate(const SemModel& sem, int n, std::uint64_t seed);

std::vector<std::string> default_names(int p);

enum class KnowledgeKind { None, Known, Forbidden, Tiers };

const char* to_string(KnowledgeKind kind);
KnowledgeKind knowledge_kind_from_string(const std::string& text);

/// Draws knowledge that is correct for the given ground truth: a uniformly
/// random true edge, a uniformly random nonadjacent pair, or source/sink
/// tiers {{source}, rest, {sink}} with the endpoints drawn from the true
/// in-degree-0 / out-degree-0 sets. Throws ValidationError when the requested
/// kind is unavailable (e.g. no nonadjacent pair exists).
Knowledge sample_knowledge(const Dag& dag, KnowledgeKind kind, std::uint64_t seed);

}  // namespace causal
