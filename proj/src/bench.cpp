#include "causal/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

#include "causal/equivalence.hpp"

namespace causal {

namespace {

bool kind_available(const Dag& dag, KnowledgeKind kind) {
    switch (kind) {
        case KnowledgeKind::None:
            return true;
        case KnowledgeKind::Known:
            return dag.edge_count() > 0;
        case KnowledgeKind::Forbidden:
            return dag.edge_count() < dag.p * (dag.p - 1) / 2;
        case KnowledgeKind::Tiers:
            return dag.p >= 2;
    }
    return false;
}

struct RepeatUnit {
    int dim;
    int repeat;
};

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    if (config.repeats < 1) throw ValidationError("bench needs at least one repeat");
    if (config.dims.empty()) throw ValidationError("bench needs at least one dimension");

    std::vector<RepeatUnit> units;
    for (int dim : config.dims)
        for (int r = 0; r < config.repeats; ++r) units.push_back({dim, r});

    std::vector<std::vector<BenchRow>> unit_rows(units.size());

    auto run_unit = [&](std::size_t u) {
        const auto [dim, repeat] = units[u];

        // Redraw until every requested kind can be sampled from the truth, so
        // all kinds of one repeat share the same DAG and data.
        Dag truth;
        int attempt = 0;
        for (;; ++attempt) {
            truth = sample_er_dag(dim, config.avg_degree,
                                  mix_seed(mix_seed(config.seed, dim), repeat * 131 + attempt));
            bool ok = true;
            for (KnowledgeKind kind : config.kinds) ok = ok && kind_available(truth, kind);
            if (ok) break;
            if (attempt > 1000)
                throw ValidationError("could not draw a ground truth admitting all knowledge kinds");
        }
        const std::uint64_t unit_seed =
            mix_seed(mix_seed(mix_seed(config.seed, dim), repeat * 131 + attempt), 0xda7aULL);
        const SemModel sem = sample_sem(truth, mix_seed(unit_seed, 1));
        const Dataset data = simulate(sem, config.n_obs, mix_seed(unit_seed, 2));

        for (KnowledgeKind kind : config.kinds) {
            const Knowledge knowledge = sample_knowledge(
                truth, kind, mix_seed(unit_seed, 100 + static_cast<std::uint64_t>(kind)));
            const DiscoveryResult result = astar_discover(data, knowledge, 1);
            const Cpdag est = modified_cpdag(result.dag, knowledge);
            const Cpdag ref = modified_cpdag(truth, knowledge);

            BenchRow row;
            row.dim = dim;
            row.kind = kind;
            row.repeat = repeat;
            row.shd = shd(est, ref);
            row.shd_scaled = shd_scaled(est, ref);
            row.eval_count = result.eval_count;
            row.predicted_eval_count = predicted_eval_count(dim, knowledge);
            row.expanded_nodes = result.expanded_nodes;
            row.runtime_ms = result.wall_time.count();
            unit_rows[u].push_back(row);
        }
    };

    int threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(units.size())));
    if (threads == 1) {
        for (std::size_t u = 0; u < units.size(); ++u) run_unit(u);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(threads);
        for (int t = 0; t < threads; ++t)
            workers.emplace_back([&] {
                for (std::size_t u = next.fetch_add(1); u < units.size(); u = next.fetch_add(1))
                    run_unit(u);
            });
        for (auto& w : workers) w.join();
    }

    std::vector<BenchRow> rows;
    for (auto& chunk : unit_rows) rows.insert(rows.end(), chunk.begin(), chunk.end());
    std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.repeat < b.repeat;
    });
    return rows;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
    std::map<std::pair<int, KnowledgeKind>, std::vector<const BenchRow*>> groups;
    for (const auto& row : rows) groups[{row.dim, row.kind}].push_back(&row);

    auto mean_std = [](const std::vector<double>& values) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= values.size();
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var = values.size() > 1 ? var / (values.size() - 1) : 0.0;
        return std::pair{mean, std::sqrt(var)};
    };

    std::vector<BenchSummary> out;
    for (const auto& [key, members] : groups) {
        BenchSummary s;
        s.dim = key.first;
        s.kind = key.second;
        s.count = static_cast<int>(members.size());
        std::vector<double> v;
        auto collect = [&](auto getter) {
            v.clear();
            for (const BenchRow* row : members) v.push_back(getter(*row));
            return mean_std(v);
        };
        std::tie(s.shd_mean, s.shd_std) = collect([](const BenchRow& r) { return double(r.shd); });
        std::tie(s.shd_scaled_mean, s.shd_scaled_std) =
            collect([](const BenchRow& r) { return r.shd_scaled; });
        std::tie(s.eval_mean, s.eval_std) =
            collect([](const BenchRow& r) { return double(r.eval_count); });
        std::tie(s.expanded_mean, s.expanded_std) =
            collect([](const BenchRow& r) { return double(r.expanded_nodes); });
        std::tie(s.runtime_mean, s.runtime_std) =
            collect([](const BenchRow& r) { return r.runtime_ms; });
        for (const BenchRow* row : members) s.eval_sum += row->eval_count;
        out.push_back(s);
    }
    return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "dim,kind,repeat,shd,shd_scaled,eval_count,predicted_eval_count,expanded_nodes,"
           "runtime_ms\n";
    char buf[64];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };
    for (const auto& r : rows)
        out << r.dim << ',' << to_string(r.kind) << ',' << r.repeat << ',' << r.shd << ','
            << fmt(r.shd_scaled) << ',' << r.eval_count << ',' << r.predicted_eval_count << ','
            << r.expanded_nodes << ',' << fmt(r.runtime_ms) << '\n';
    for (const auto& s : summarize(rows)) {
        auto pm = [&](double mean, double std) { return fmt(mean) + "±" + fmt(std); };
        out << s.dim << ',' << to_string(s.kind) << ",summary," << pm(s.shd_mean, s.shd_std) << ','
            << pm(s.shd_scaled_mean, s.shd_scaled_std) << ',' << pm(s.eval_mean, s.eval_std)
            << ",," << pm(s.expanded_mean, s.expanded_std) << ','
            << pm(s.runtime_mean, s.runtime_std) << '\n';
    }
}

}  // namespace causal
