#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "causal/bench.hpp"
#include "causal/equivalence.hpp"
#include "causal/graph_io.hpp"
#include "causal/oracle.hpp"
#include "causal/verify_counts.hpp"

namespace {

using namespace causal;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitMismatch = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct DiscoverArgs {
    std::string data_path;
    std::string knowledge_path;
    std::string super_path;
    std::string out_path;
    std::string dot_path;
    std::string report_path;
    bool certify = false;
    char delimiter = ',';
    int threads = 0;
};

int run_discover(const DiscoverArgs& args) {
    const Dataset data = load_csv(args.data_path, args.delimiter);

    Knowledge knowledge = args.knowledge_path.empty()
                              ? Knowledge::none(data.p)
                              : parse_knowledge(read_file(args.knowledge_path), data.names);
    if (!args.super_path.empty())
        knowledge = merge_super_structure(knowledge, load_super_structure(args.super_path, data.names));

    const DiscoveryResult result = astar_discover(data, knowledge, args.threads);
    const Cpdag modified = modified_cpdag(result.dag, knowledge);
    const GraphDoc doc{data.names, modified};

    bool certified = false;
    if (args.certify) {
        if (data.p > 5) throw ValidationError("--certify supports at most 5 variables");
        const auto [oracle_dag, oracle_score] = exhaustive_best_dag(data, knowledge);
        const double tolerance = 1e-9 * std::max(1.0, std::abs(oracle_score));
        certified = std::abs(result.total_score - oracle_score) <= tolerance &&
                    modified_cpdag(oracle_dag, knowledge) == modified;
        if (!certified) {
            std::cerr << "certify: search result (" << format_double(result.total_score)
                      << ") disagrees with exhaustive enumeration ("
                      << format_double(oracle_score) << ")\n";
            return kExitMismatch;
        }
    }

    if (!args.out_path.empty()) save_graph_json(args.out_path, doc);
    if (!args.dot_path.empty()) write_text_file(args.dot_path, to_dot(doc));
    if (!args.report_path.empty()) {
        nlohmann::ordered_json report;
        report["total_score"] = result.total_score;
        report["eval_count"] = result.eval_count;
        report["expanded_nodes"] = result.expanded_nodes;
        report["wall_time_ms"] = result.wall_time.count();
        if (args.certify) report["certified"] = certified;
        write_text_file(args.report_path, report.dump(2) + "\n");
    }

    std::cout << "variables: " << data.p << "  observations: " << data.n << "\n"
              << "total score: " << format_double(result.total_score) << "\n"
              << "score evaluations: " << result.eval_count
              << "  expanded nodes: " << result.expanded_nodes << "\n"
              << "edges in modified CPDAG: " << modified.edge_count() << "\n";
    if (args.certify) std::cout << "certified against exhaustive enumeration: yes\n";
    return kExitOk;
}

int run_bench_cmd(const BenchConfig& config, const std::string& out_path) {
    const auto rows = run_bench(config);
    std::ostringstream csv;
    write_bench_csv(csv, rows);
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(out_path, csv.str());

    for (const auto& s : summarize(rows))
        std::cout << "dim " << s.dim << " " << to_string(s.kind) << ": shd_scaled "
                  << s.shd_scaled_mean << " ± " << s.shd_scaled_std << ", evals " << s.eval_mean
                  << "\n";
    return kExitOk;
}

int run_verify_counts(int max_p, std::uint64_t seed, int threads) {
    const CountReport report = verify_counts(max_p, seed, threads);
    std::cout << report.table();
    std::size_t bad = 0;
    for (const auto& check : report.checks)
        if (!check.ok()) ++bad;
    std::cout << report.checks.size() << " checks, " << bad << " mismatches\n";
    return report.all_ok() ? kExitOk : kExitMismatch;
}

int run_shd(const std::string& path_a, const std::string& path_b,
            const std::string& knowledge_path) {
    const GraphDoc a = load_graph_json(path_a);
    const GraphDoc b = load_graph_json(path_b);
    if (a.names != b.names)
        throw ValidationError("the two graphs have different variables (or a different order)");

    const Knowledge knowledge = knowledge_path.empty()
                                    ? Knowledge::none(static_cast<int>(a.names.size()))
                                    : parse_knowledge(read_file(knowledge_path), a.names);

    // Fully directed inputs are taken as DAG estimates and canonicalized to
    // their CPDAG first; for a CPDAG whose edges are all compelled this is
    // the identity, so the ambiguity is harmless.
    auto canonical = [&](const GraphDoc& doc) {
        bool any_undirected = false;
        for (int i = 0; i < doc.graph.p() && !any_undirected; ++i)
            for (int j = i + 1; j < doc.graph.p(); ++j)
                if (doc.graph.undirected(i, j)) {
                    any_undirected = true;
                    break;
                }
        const Cpdag base = any_undirected ? doc.graph : dag_to_cpdag(require_dag(doc));
        return meek_closure(base, knowledge);
    };

    const Cpdag ca = canonical(a);
    const Cpdag cb = canonical(b);
    std::cout << "shd " << shd(ca, cb) << "\n"
              << "shd_scaled " << format_double(shd_scaled(ca, cb)) << "\n";
    return kExitOk;
}

struct SynthArgs {
    int p = 10;
    double degree = 2.0;
    int n = 500;
    std::uint64_t seed = 20240824;
    std::string out_prefix;
    std::string knowledge_kind;
};

int run_synth(const SynthArgs& args) {
    const Dag truth = sample_er_dag(args.p, args.degree, args.seed);
    const SemModel sem = sample_sem(truth, mix_seed(args.seed, 1));
    const auto columns = simulate_columns(sem, args.n, mix_seed(args.seed, 2));
    const auto names = default_names(args.p);

    std::ostringstream csv;
    for (int j = 0; j < args.p; ++j) csv << (j ? "," : "") << names[j];
    csv << "\n";
    for (int r = 0; r < args.n; ++r) {
        for (int j = 0; j < args.p; ++j) csv << (j ? "," : "") << format_double(columns[j][r]);
        csv << "\n";
    }
    write_text_file(args.out_prefix + "_data.csv", csv.str());
    save_graph_json(args.out_prefix + "_truth.json", graph_doc_from_dag(truth, names));

    if (!args.knowledge_kind.empty()) {
        const KnowledgeKind kind = knowledge_kind_from_string(args.knowledge_kind);
        const Knowledge knowledge = sample_knowledge(truth, kind, mix_seed(args.seed, 3));
        nlohmann::ordered_json doc;
        if (!knowledge.known.empty()) {
            auto& list = doc["known"] = nlohmann::ordered_json::array();
            for (const auto& [from, to] : knowledge.known)
                list.push_back({names[from], names[to]});
        }
        if (!knowledge.forbidden.empty()) {
            auto& list = doc["forbidden"] = nlohmann::ordered_json::array();
            for (const auto& [x, y] : knowledge.forbidden) list.push_back({names[x], names[y]});
        }
        if (!knowledge.tiers.empty()) {
            auto& list = doc["tiers"] = nlohmann::ordered_json::array();
            for (const auto& tier : knowledge.tiers) {
                nlohmann::ordered_json members = nlohmann::ordered_json::array();
                for (int v : tier) members.push_back(names[v]);
                list.push_back(members);
            }
        }
        write_text_file(args.out_prefix + "_knowledge.json", doc.dump(2) + "\n");
    }

    std::cout << "wrote " << args.out_prefix << "_data.csv (" << args.n << " rows), "
              << args.out_prefix << "_truth.json (" << truth.edge_count() << " edges)";
    if (!args.knowledge_kind.empty()) std::cout << ", " << args.out_prefix << "_knowledge.json";
    std::cout << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact BIC-optimal causal discovery with domain knowledge"};
    app.require_subcommand(1);

    DiscoverArgs discover_args;
    auto* discover = app.add_subcommand("discover", "Search for the optimal DAG on a CSV dataset");
    discover->add_option("--data", discover_args.data_path, "CSV file with a header row")
        ->required();
    discover->add_option("--knowledge", discover_args.knowledge_path, "domain knowledge JSON");
    discover->add_option("--super-structure", discover_args.super_path,
                         "super-structure file (CSV 0/1 matrix or edge-list JSON)");
    discover->add_option("--out", discover_args.out_path, "output graph JSON (modified CPDAG)");
    discover->add_option("--dot", discover_args.dot_path, "output DOT file");
    discover->add_option("--report", discover_args.report_path, "run statistics JSON");
    discover->add_option("--delimiter", discover_args.delimiter, "CSV delimiter (default ,)");
    discover->add_option("--threads", discover_args.threads, "worker threads (default: all cores)");
    discover->add_flag("--certify", discover_args.certify,
                       "cross-check against exhaustive enumeration (p <= 5)");

    BenchConfig bench_config;
    std::string bench_out, bench_kinds = "none,known,forbidden,tiers", bench_dims = "5,7,10";
    auto* bench = app.add_subcommand("bench", "Synthetic benchmark over random SEMs");
    bench->add_option("--dims", bench_dims, "comma-separated dimensions (default 5,7,10)");
    bench->add_option("--repeats", bench_config.repeats, "repeats per dimension (default 20)");
    bench->add_option("--knowledge-kinds", bench_kinds,
                      "comma-separated subset of none,known,forbidden,tiers");
    bench->add_option("--seed", bench_config.seed, "base seed (default fixed)");
    bench->add_option("--n", bench_config.n_obs, "observations per dataset (default 500)");
    bench->add_option("--degree", bench_config.avg_degree, "average degree (default 2)");
    bench->add_option("--threads", bench_config.threads, "worker threads");
    bench->add_option("--out", bench_out, "results CSV path (default: stdout)");

    int max_p = 12;
    std::uint64_t vc_seed = 7;
    int vc_threads = 0;
    auto* verify = app.add_subcommand("verify-counts",
                                      "Check evaluation counters against the closed-form counts");
    verify->add_option("--max-p", max_p, "largest dimension to check (default 12)");
    verify->add_option("--seed", vc_seed, "seed for the random tier partitions");
    verify->add_option("--threads", vc_threads, "worker threads");

    std::string shd_a, shd_b, shd_knowledge;
    auto* shd_cmd = app.add_subcommand("shd", "SHD between the modified CPDAGs of two graphs");
    shd_cmd->add_option("a", shd_a, "first graph JSON")->required();
    shd_cmd->add_option("b", shd_b, "second graph JSON")->required();
    shd_cmd->add_option("--knowledge", shd_knowledge, "domain knowledge JSON applied to both");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic SEM dataset");
    synth->add_option("--p", synth_args.p, "variable count (default 10)");
    synth->add_option("--degree", synth_args.degree, "average degree (default 2)");
    synth->add_option("--n", synth_args.n, "observations (default 500)");
    synth->add_option("--seed", synth_args.seed, "seed (default fixed)");
    synth->add_option("--out-prefix", synth_args.out_prefix, "output path prefix")->required();
    synth->add_option("--knowledge-kind", synth_args.knowledge_kind,
                      "also sample knowledge: known, forbidden or tiers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*discover) return run_discover(discover_args);
        if (*bench) {
            bench_config.dims.clear();
            std::istringstream dims(bench_dims);
            std::string item;
            while (std::getline(dims, item, ',')) bench_config.dims.push_back(std::stoi(item));
            bench_config.kinds.clear();
            std::istringstream kinds(bench_kinds);
            while (std::getline(kinds, item, ','))
                bench_config.kinds.push_back(knowledge_kind_from_string(item));
            return run_bench_cmd(bench_config, bench_out);
        }
        if (*verify) return run_verify_counts(max_p, vc_seed, vc_threads);
        if (*shd_cmd) return run_shd(shd_a, shd_b, shd_knowledge);
        if (*synth) return run_synth(synth_args);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
