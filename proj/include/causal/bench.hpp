#pragma once

#include <iosfwd>
#include <string>

#include "causal/order_search.hpp"
#include "causal/synthgen.hpp"

namespace causal {

struct BenchConfig {
    std::vector<int> dims{5, 7, 10};
    int repeats = 20;
    std::vector<KnowledgeKind> kinds{KnowledgeKind::None, KnowledgeKind::Known,
                                     KnowledgeKind::Forbidden, KnowledgeKind::Tiers};
    std::uint64_t seed = 20240824;  // fixed default so runs are reproducible without flags
    int n_obs = 500;
    double avg_degree = 2.0;
    int threads = 0;
};

struct BenchRow {
    int dim = 0;
    KnowledgeKind kind = KnowledgeKind::None;
    int repeat = 0;
    int shd = 0;
    double shd_scaled = 0.0;
    std::uint64_t eval_count = 0;
    std::uint64_t predicted_eval_count = 0;
    std::uint64_t expanded_nodes = 0;
    double runtime_ms = 0.0;
};

/// One synthetic benchmark cell: fresh ER DAG + SEM per (dim, repeat), shared
/// across the knowledge kinds of that repeat; knowledge sampled on top;
/// discovery scored by SHD between modified CPDAGs. Rows come back sorted by
/// (dim, kind, repeat) regardless of worker scheduling.
std::vector<BenchRow> run_bench(const BenchConfig& config);

/// Per-(dim, kind) means over the data rows.
struct BenchSummary {
    int dim = 0;
    KnowledgeKind kind = KnowledgeKind::None;
    int count = 0;
    double shd_mean = 0.0, shd_std = 0.0;
    double shd_scaled_mean = 0.0, shd_scaled_std = 0.0;
    double eval_mean = 0.0, eval_std = 0.0;
    double expanded_mean = 0.0, expanded_std = 0.0;
    double runtime_mean = 0.0, runtime_std = 0.0;
    std::uint64_t eval_sum = 0;
};

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows);

/// Data rows followed by one summary row per (dim, kind); summary cells are
/// formatted "mean±std".
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace causal
