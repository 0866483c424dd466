#include "causal/scoring.hpp"

#include <cmath>

namespace causal {

bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, int k) {
    double max_diag = 0.0;
    for (int i = 0; i < k; ++i) max_diag = std::max(max_diag, a[static_cast<std::size_t>(i) * k + i]);
    const double pivot_floor = 1e-12 * std::max(max_diag, 1e-300);

    // Lower-triangular factor written over a.
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[static_cast<std::size_t>(i) * k + j];
            for (int m = 0; m < j; ++m)
                sum -= a[static_cast<std::size_t>(i) * k + m] * a[static_cast<std::size_t>(j) * k + m];
            if (i == j) {
                if (sum <= pivot_floor) return false;
                a[static_cast<std::size_t>(i) * k + j] = std::sqrt(sum);
            } else {
                a[static_cast<std::size_t>(i) * k + j] = sum / a[static_cast<std::size_t>(j) * k + j];
            }
        }
    }
    // Forward then backward substitution.
    for (int i = 0; i < k; ++i) {
        double sum = b[i];
        for (int m = 0; m < i; ++m) sum -= a[static_cast<std::size_t>(i) * k + m] * b[m];
        b[i] = sum / a[static_cast<std::size_t>(i) * k + i];
    }
    for (int i = k - 1; i >= 0; --i) {
        double sum = b[i];
        for (int m = i + 1; m < k; ++m) sum -= a[static_cast<std::size_t>(m) * k + i] * b[m];
        b[i] = sum / a[static_cast<std::size_t>(i) * k + i];
    }
    return true;
}

ScoreTable::ScoreTable(const Dataset& data)
    : data_(&data), cache_(data.p), evals_(data.p, 0) {}

const LocalScore& ScoreTable::bic_score(int target, Mask parents) {
    if (has_bit(parents, target))
        throw std::logic_error("bic_score: target inside its own parent set");
    auto& cache = cache_[target];
    if (auto it = cache.find(parents); it != cache.end()) return it->second;

    ++evals_[target];
    const int n = data_->n;
    const double log_n = std::log(static_cast<double>(n));

    GramView view = gram_submatrix(*data_, parents, target);
    LocalScore score;
    score.k = view.k;

    double rss;
    if (view.k == 0) {
        rss = view.s_tt;
    } else {
        std::vector<double> weights = view.c_s;
        if (!cholesky_solve(view.g_ss, weights, view.k)) {
            score.value = kInfScore;
            score.rss = kInfScore;
            return cache.emplace(parents, score).first->second;
        }
        double explained = 0.0;
        for (int i = 0; i < view.k; ++i) explained += view.c_s[i] * weights[i];
        rss = view.s_tt - explained;
    }
    const double rss_floor = 1e-12 * std::max(view.s_tt, 1.0);
    score.rss = std::max(rss, rss_floor);
    score.value = score.k * log_n + n * std::log(score.rss / n);
    return cache.emplace(parents, score).first->second;
}

std::uint64_t ScoreTable::eval_count() const {
    std::uint64_t total = 0;
    for (std::uint64_t e : evals_) total += e;
    return total;
}

void ScoreTable::reset_counter() {
    for (auto& cache : cache_) cache.clear();
    for (auto& e : evals_) e = 0;
}

}  // namespace causal
