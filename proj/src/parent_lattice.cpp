#include "causal/parent_lattice.hpp"

#include <atomic>
#include <optional>
#include <thread>

namespace causal {

namespace {

// (score, set) beats the incumbent on score, then cardinality, then mask.
inline bool better(double score, Mask set, double inc_score, Mask inc_set) {
    if (score != inc_score) return score < inc_score;
    const int c = popcount(set), ic = popcount(inc_set);
    if (c != ic) return c < ic;
    return set < inc_set;
}

}  // namespace

ParentLattice::ParentLattice(int target, const AllowedSets& allowed, ScoreTable& table)
    : target_(target), p_(allowed.p), others_(full_mask(allowed.p) & ~bit(target)) {
    const int m = p_ - 1;
    const std::size_t size = std::size_t{1} << m;
    best_score_.assign(size, kInfScore);
    best_set_.assign(size, 0);

    // Bit positions of the candidate parents, ascending.
    std::vector<int> position;
    position.reserve(m);
    for (Mask rest = others_; rest; rest &= rest - 1) position.push_back(lowest_bit(rest));

    for (std::size_t cm = 0; cm < size; ++cm) {
        Mask full = 0;
        for (Mask rest = cm; rest; rest &= rest - 1) full |= bit(position[lowest_bit(rest)]);

        double score = kInfScore;
        Mask set = full;
        if (allowed.allowed(target_, full)) {
            score = table.bic_score(target_, full).value;
            if (is_inf_score(score)) set = 0;
        } else {
            set = 0;
        }
        for (Mask rest = cm; rest; rest &= rest - 1) {
            const std::size_t sub = cm ^ (rest & -rest);
            if (is_inf_score(best_score_[sub])) continue;
            if (is_inf_score(score) || better(best_score_[sub], best_set_[sub], score, set)) {
                score = best_score_[sub];
                set = best_set_[sub];
            }
        }
        best_score_[cm] = score;
        best_set_[cm] = set;
    }
}

Mask ParentLattice::compress(Mask full) const {
    Mask cm = 0;
    int out = 0;
    for (Mask rest = others_; rest; rest &= rest - 1, ++out)
        if (full & (rest & -rest)) cm |= Mask{1} << out;
    return cm;
}

std::pair<double, Mask> ParentLattice::best(Mask candidate_mask) const {
    const Mask cm = compress(candidate_mask & others_);
    return {best_score_[cm], best_set_[cm]};
}

std::vector<ParentLattice> build_all_lattices(const AllowedSets& allowed, ScoreTable& table,
                                              int threads) {
    const int p = allowed.p;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, p));

    std::vector<std::optional<ParentLattice>> slots(p);
    if (threads == 1) {
        for (int i = 0; i < p; ++i) slots[i].emplace(i, allowed, table);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        workers.reserve(threads);
        for (int t = 0; t < threads; ++t)
            workers.emplace_back([&] {
                for (int i = next.fetch_add(1); i < p; i = next.fetch_add(1))
                    slots[i].emplace(i, allowed, table);
            });
        for (auto& w : workers) w.join();
    }

    std::vector<ParentLattice> lattices;
    lattices.reserve(p);
    for (auto& slot : slots) lattices.push_back(std::move(*slot));
    return lattices;
}

}  // namespace causal
