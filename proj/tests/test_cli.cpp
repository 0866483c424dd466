#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "causal/graph_io.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(CAUSAL_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe)) output.append(buffer, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string tmp_path(const std::string& name) { return "/tmp/causal_cli_test_" + name; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("synth is byte-identical for a fixed seed") {
    REQUIRE(run_cli("synth --p 6 --n 80 --seed 31 --out-prefix " + tmp_path("a") +
                    " --knowledge-kind tiers")
                .exit_code == 0);
    REQUIRE(run_cli("synth --p 6 --n 80 --seed 31 --out-prefix " + tmp_path("b") +
                    " --knowledge-kind tiers")
                .exit_code == 0);
    CHECK(slurp(tmp_path("a_data.csv")) == slurp(tmp_path("b_data.csv")));
    CHECK(slurp(tmp_path("a_truth.json")) == slurp(tmp_path("b_truth.json")));
    CHECK(slurp(tmp_path("a_knowledge.json")) == slurp(tmp_path("b_knowledge.json")));

    const auto different = run_cli("synth --p 6 --n 80 --seed 32 --out-prefix " + tmp_path("c"));
    REQUIRE(different.exit_code == 0);
    CHECK(slurp(tmp_path("a_data.csv")) != slurp(tmp_path("c_data.csv")));
}

TEST_CASE("discover produces identical outputs across runs and certifies") {
    REQUIRE(run_cli("synth --p 4 --n 200 --seed 77 --out-prefix " + tmp_path("d")).exit_code == 0);
    const std::string base = "discover --data " + tmp_path("d_data.csv");
    const auto first = run_cli(base + " --certify --out " + tmp_path("d_est.json") + " --dot " +
                               tmp_path("d_est.dot") + " --report " + tmp_path("d_report.json"));
    CHECK(first.exit_code == 0);
    CHECK(first.output.find("certified") != std::string::npos);

    const auto second = run_cli(base + " --out " + tmp_path("d_est2.json"));
    CHECK(second.exit_code == 0);
    CHECK(slurp(tmp_path("d_est.json")) == slurp(tmp_path("d_est2.json")));

    CHECK(slurp(tmp_path("d_report.json")).find("\"certified\": true") != std::string::npos);
    CHECK(slurp(tmp_path("d_est.dot")).find("digraph") != std::string::npos);
}

TEST_CASE("discover exit codes") {
    SUBCASE("missing file is an io error") {
        CHECK(run_cli("discover --data /nonexistent.csv").exit_code == 1);
    }
    SUBCASE("conflicting knowledge names the pair and exits 2") {
        write_file(tmp_path("k.csv"), "a,b\n1,2\n2,1\n3,5\n");
        write_file(tmp_path("k.json"), R"({"known": [["a","b"]], "forbidden": [["a","b"]]})");
        const auto result = run_cli("discover --data " + tmp_path("k.csv") + " --knowledge " +
                                    tmp_path("k.json"));
        CHECK(result.exit_code == 2);
        CHECK(result.output.find("known and forbidden") != std::string::npos);
    }
    SUBCASE("cyclic known edges exit 2") {
        write_file(tmp_path("k.csv"), "a,b\n1,2\n2,1\n3,5\n");
        write_file(tmp_path("kc.json"), R"({"known": [["a","b"],["b","a"]]})");
        CHECK(run_cli("discover --data " + tmp_path("k.csv") + " --knowledge " + tmp_path("kc.json"))
                  .exit_code == 2);
    }
    SUBCASE("certify beyond p=5 exits 2") {
        REQUIRE(run_cli("synth --p 6 --n 50 --seed 3 --out-prefix " + tmp_path("e")).exit_code == 0);
        CHECK(run_cli("discover --certify --data " + tmp_path("e_data.csv")).exit_code == 2);
    }
}

TEST_CASE("discover accepts a super-structure file") {
    REQUIRE(run_cli("synth --p 4 --n 150 --seed 21 --out-prefix " + tmp_path("ss")).exit_code == 0);
    // Empty super-structure: every pair forbidden, so the estimate is empty.
    write_file(tmp_path("ss.json"), R"({"edges": []})");
    const auto result = run_cli("discover --data " + tmp_path("ss_data.csv") +
                                " --super-structure " + tmp_path("ss.json") + " --out " +
                                tmp_path("ss_est.json"));
    CHECK(result.exit_code == 0);
    CHECK(slurp(tmp_path("ss_est.json")).find("\"edges\": []") != std::string::npos);
}

TEST_CASE("shd applies knowledge to both graphs") {
    REQUIRE(run_cli("synth --p 5 --n 200 --seed 40 --out-prefix " + tmp_path("sk") +
                    " --knowledge-kind tiers")
                .exit_code == 0);
    const auto result = run_cli("shd " + tmp_path("sk_truth.json") + " " + tmp_path("sk_truth.json") +
                                " --knowledge " + tmp_path("sk_knowledge.json"));
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("shd 0\n") != std::string::npos);
}

TEST_CASE("shd of a graph with itself is zero") {
    REQUIRE(run_cli("synth --p 5 --n 60 --seed 5 --out-prefix " + tmp_path("f")).exit_code == 0);
    const auto result = run_cli("shd " + tmp_path("f_truth.json") + " " + tmp_path("f_truth.json"));
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("shd 0\n") != std::string::npos);
    CHECK(result.output.find("shd_scaled 0\n") != std::string::npos);
}

TEST_CASE("shd with mismatched variables exits 2") {
    REQUIRE(run_cli("synth --p 5 --n 60 --seed 5 --out-prefix " + tmp_path("g")).exit_code == 0);
    REQUIRE(run_cli("synth --p 6 --n 60 --seed 5 --out-prefix " + tmp_path("h")).exit_code == 0);
    CHECK(run_cli("shd " + tmp_path("g_truth.json") + " " + tmp_path("h_truth.json")).exit_code == 2);
}

TEST_CASE("synth then discover yields a bounded scaled shd") {
    REQUIRE(run_cli("synth --p 5 --n 300 --seed 99 --out-prefix " + tmp_path("i")).exit_code == 0);
    REQUIRE(run_cli("discover --data " + tmp_path("i_data.csv") + " --out " + tmp_path("i_est.json"))
                .exit_code == 0);
    const auto result = run_cli("shd " + tmp_path("i_est.json") + " " + tmp_path("i_truth.json"));
    CHECK(result.exit_code == 0);
    std::istringstream lines(result.output);
    std::string word;
    double raw = -1.0, scaled = -1.0;
    while (lines >> word) {
        if (word == "shd") lines >> raw;
        if (word == "shd_scaled") lines >> scaled;
    }
    CHECK(raw >= 0);
    CHECK(scaled >= 0.0);
    CHECK(scaled <= 1.0);
}

TEST_CASE("bench emits data rows plus summary rows") {
    const auto result = run_cli("bench --dims 5 --repeats 3 --knowledge-kinds none --seed 4 --out " +
                                tmp_path("bench.csv"));
    REQUIRE(result.exit_code == 0);
    const std::string csv = slurp(tmp_path("bench.csv"));
    int data_rows = 0, summary_rows = 0;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line ==
          "dim,kind,repeat,shd,shd_scaled,eval_count,predicted_eval_count,expanded_nodes,"
          "runtime_ms");
    while (std::getline(lines, line)) {
        if (line.find(",summary,") != std::string::npos)
            ++summary_rows;
        else if (!line.empty())
            ++data_rows;
    }
    CHECK(data_rows == 3);
    CHECK(summary_rows == 1);
    // Worst-case-exact counting: every none row evaluates p * 2^(p-1) = 80 scores.
    CHECK(csv.find(",80,80,") != std::string::npos);
}

TEST_CASE("bench eval counts equal the predicted counts on every row") {
    const auto result = run_cli("bench --dims 5,7 --repeats 2 --seed 12 --out " +
                                tmp_path("bench_all.csv"));
    REQUIRE(result.exit_code == 0);
    std::istringstream lines(slurp(tmp_path("bench_all.csv")));
    std::string line;
    std::getline(lines, line);  // header
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line.find(",summary,") != std::string::npos) continue;
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> row;
        while (std::getline(fields, cell, ',')) row.push_back(cell);
        REQUIRE(row.size() == 9);
        CHECK(row[5] == row[6]);  // eval_count == predicted_eval_count
        ++rows;
    }
    CHECK(rows == 2 * 2 * 4);
}

TEST_CASE("verify-counts exits 0 on a small range") {
    const auto result = run_cli("verify-counts --max-p 6");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("0 mismatches") != std::string::npos);
}

TEST_CASE("the sachs ground-truth fixture parses and has 17 edges") {
    const auto result = run_cli("shd " + std::string(CAUSAL_DATA_DIR) + "/sachs_truth.json " +
                                std::string(CAUSAL_DATA_DIR) + "/sachs_truth.json");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("shd 0\n") != std::string::npos);

    const auto doc = causal::load_graph_json(std::string(CAUSAL_DATA_DIR) + "/sachs_truth.json");
    REQUIRE(doc.names.size() == 11);
    const causal::Dag truth = causal::require_dag(doc);
    CHECK(truth.edge_count() == 17);

    auto index = [&](const std::string& name) {
        for (int i = 0; i < 11; ++i)
            if (doc.names[i] == name) return i;
        FAIL("missing variable ", name);
        return -1;
    };
    const std::vector<std::pair<std::string, std::string>> expected{
        {"Plcg", "PIP2"}, {"Plcg", "PIP3"}, {"PIP3", "PIP2"}, {"PKC", "PKA"}, {"PKC", "Jnk"},
        {"PKC", "P38"},   {"PKA", "Jnk"},   {"PKA", "P38"},   {"PKC", "RAF"}, {"PKA", "RAF"},
        {"PKA", "Mek"},   {"PKC", "Mek"},   {"PKA", "Erk"},   {"PKA", "Akt"}, {"RAF", "Mek"},
        {"Mek", "Erk"},   {"Erk", "Akt"}};
    for (const auto& [from, to] : expected) CHECK(truth.has_edge(index(from), index(to)));
}
