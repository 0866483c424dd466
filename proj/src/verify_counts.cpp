#include "causal/verify_counts.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "causal/parent_lattice.hpp"
#include "causal/synthgen.hpp"

namespace causal {

namespace {

// The counter only depends on the pruning, not on the data, so a small
// simulated dataset per p keeps the regressions cheap.
Dataset tiny_dataset(int p) {
    const Dag dag = sample_er_dag(p, 2.0, 12345 + p);
    const SemModel sem = sample_sem(dag, 999 + p);
    return simulate(sem, p + 8, 4242 + p);
}

std::uint64_t actual_count(const Dataset& data, const Knowledge& knowledge) {
    const AllowedSets allowed = compile_allowed(knowledge);
    ScoreTable table(data);
    build_all_lattices(allowed, table, 1);
    return table.eval_count();
}

// Random ordered partition of all p variables into 2..p tiers.
std::vector<std::vector<int>> random_partition(int p, Rng& rng) {
    std::vector<int> order(p);
    for (int i = 0; i < p; ++i) order[i] = i;
    rng.shuffle(order);
    const int tier_count = 2 + static_cast<int>(rng.below(p - 1));
    std::vector<std::vector<int>> tiers(tier_count);
    for (int i = 0; i < tier_count; ++i) tiers[i].push_back(order[i]);  // no empty tier
    for (int i = tier_count; i < p; ++i) tiers[rng.below(tier_count)].push_back(order[i]);
    return tiers;
}

}  // namespace

bool CountReport::all_ok() const {
    for (const auto& check : checks)
        if (!check.ok()) return false;
    return true;
}

std::string CountReport::table() const {
    std::ostringstream out;
    out << "check                                          expected      actual  status\n";
    for (const auto& c : checks) {
        out << c.label;
        for (std::size_t i = c.label.size(); i < 44; ++i) out << ' ';
        std::string e = std::to_string(c.expected), a = std::to_string(c.actual);
        for (std::size_t i = e.size(); i < 12; ++i) out << ' ';
        out << e;
        for (std::size_t i = a.size(); i < 12; ++i) out << ' ';
        out << a << (c.ok() ? "  ok" : "  MISMATCH") << '\n';
    }
    return out.str();
}

CountReport verify_counts(int max_p, std::uint64_t seed, int threads) {
    if (max_p < 4) throw ValidationError("verify-counts needs max-p >= 4");
    if (max_p > 16) throw ValidationError("verify-counts refuses max-p > 16");

    struct Job {
        std::string label;
        Knowledge knowledge;
        std::uint64_t expected;
        int p;
    };
    std::vector<Job> jobs;
    std::vector<Dataset> datasets;

    for (int p = 4; p <= max_p; ++p) {
        datasets.push_back(tiny_dataset(p));
        const int d = static_cast<int>(datasets.size()) - 1;
        const std::uint64_t half = std::uint64_t{1} << (p - 1);
        auto tag = [p](const std::string& text) { return "p=" + std::to_string(p) + " " + text; };

        jobs.push_back({tag("no knowledge"), Knowledge::none(p),
                        static_cast<std::uint64_t>(p) * half, d});

        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                if (i == j) continue;
                jobs.push_back({tag("known " + std::to_string(i) + "->" + std::to_string(j)),
                                make_knowledge(p, {{i, j}}, {}, {}),
                                static_cast<std::uint64_t>(p - 1) * half, d});
            }

        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                jobs.push_back({tag("forbidden {" + std::to_string(i) + "," + std::to_string(j) + "}"),
                                make_knowledge(p, {}, {{i, j}}, {}),
                                static_cast<std::uint64_t>(p - 1) * half, d});

        // Source/sink 3-tier partitions: (p-2)*2^(p-2) + 2^(p-1) + 1, the +1
        // being the empty-set evaluation in the singleton first tier.
        const std::uint64_t three_tier =
            static_cast<std::uint64_t>(p - 2) * (half >> 1) + half + 1;
        for (int s = 0; s < p; ++s)
            for (int k = 0; k < p; ++k) {
                if (s == k) continue;
                std::vector<int> middle;
                for (int v = 0; v < p; ++v)
                    if (v != s && v != k) middle.push_back(v);
                jobs.push_back({tag("tiers {" + std::to_string(s) + "}|rest|{" + std::to_string(k) + "}"),
                                make_knowledge(p, {}, {}, {{s}, middle, {k}}), three_tier, d});
            }

        Rng rng = Rng::derived(seed, {static_cast<std::uint64_t>(p)});
        for (int r = 0; r < 20; ++r) {
            auto tiers = random_partition(p, rng);
            const auto knowledge = make_knowledge(p, {}, {}, tiers);
            jobs.push_back({tag("random tiers #" + std::to_string(r)), knowledge,
                            predicted_eval_count(p, knowledge), d});
        }
    }

    CountReport report;
    report.checks.resize(jobs.size());

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, threads);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            const Job& job = jobs[i];
            report.checks[i] = {job.label, job.expected, actual_count(datasets[job.p], job.knowledge)};
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& w : pool) w.join();
    }
    return report;
}

}  // namespace causal
