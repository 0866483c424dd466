#include <doctest.h>

#include <map>

#include "causal/equivalence.hpp"
#include "test_support.hpp"

using namespace causal;

TEST_CASE("chain collapses to an undirected cpdag") {
    const Cpdag g = dag_to_cpdag(make_dag(3, {0, bit(0), bit(1)}));
    CHECK(g.undirected(0, 1));
    CHECK(g.undirected(1, 2));
    CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("an unshielded collider stays directed") {
    const Cpdag g = dag_to_cpdag(make_dag(3, {0, bit(0) | bit(2), 0}));
    CHECK(g.directed(0, 1));
    CHECK(g.directed(2, 1));
    CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("same skeleton and v-structures give the same cpdag (p=4)") {
    std::map<std::pair<std::vector<std::pair<int, int>>, std::vector<VStructure>>, Cpdag> groups;
    int dags = 0;
    for (const Dag& dag : testsupport::enumerate_all_dags(4)) {
        ++dags;
        std::vector<std::pair<int, int>> skeleton;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (dag.has_edge(i, j) || dag.has_edge(j, i)) skeleton.emplace_back(i, j);
        const auto key = std::pair{skeleton, v_structures(dag)};
        const Cpdag cpdag = dag_to_cpdag(dag);
        auto [it, fresh] = groups.emplace(key, cpdag);
        if (!fresh) CHECK(it->second == cpdag);
    }
    CHECK(dags == 543);
    CHECK(groups.size() < 543);  // classes group several members
}

TEST_CASE("cpdag of any consistent extension is the cpdag itself (p<=4)") {
    for (const Dag& dag : testsupport::enumerate_all_dags(4)) {
        const Cpdag cpdag = dag_to_cpdag(dag);
        for (const Dag& member :
             testsupport::consistent_extensions(cpdag, Knowledge::none(4)))
            CHECK(dag_to_cpdag(member) == cpdag);
    }
}

TEST_CASE("meek R1 orients away from a collider-avoiding edge") {
    // 0 -> 1 - 2 with 0, 2 nonadjacent.
    Cpdag g(3);
    g.set_directed(0, 1);
    g.set_undirected(1, 2);
    const Cpdag closed = meek_closure(g, Knowledge::none(3));
    CHECK(closed.directed(1, 2));
}

TEST_CASE("meek closure with empty knowledge is the identity on closed cpdags") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dag dag = sample_er_dag(5, 2.0, 7100 + seed);
        const Cpdag cpdag = dag_to_cpdag(dag);
        CHECK(meek_closure(cpdag, Knowledge::none(5)) == cpdag);
    }
}

TEST_CASE("meek closure is idempotent and monotone") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Dag truth = sample_er_dag(5, 2.0, 9300 + seed);
        const Cpdag cpdag = dag_to_cpdag(truth);
        const Knowledge knowledge = sample_knowledge(truth, KnowledgeKind::Tiers, seed);
        const Cpdag once = meek_closure(cpdag, knowledge);
        CHECK(meek_closure(once, knowledge) == once);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                CHECK(cpdag.adjacent(i, j) == once.adjacent(i, j));  // skeleton preserved
                if (cpdag.directed(i, j)) CHECK(once.directed(i, j));  // only und -> dir
            }
        CHECK(once.directed_part_acyclic());
    }
}

TEST_CASE("meek closure matches the extension-enumeration oracle") {
    int checked = 0;
    for (int p : {4, 5}) {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const Dag truth = sample_er_dag(p, 2.0, 100 * p + seed);
            const Cpdag cpdag = dag_to_cpdag(truth);
            for (KnowledgeKind kind :
                 {KnowledgeKind::Known, KnowledgeKind::Forbidden, KnowledgeKind::Tiers}) {
                if (kind == KnowledgeKind::Known && truth.edge_count() == 0) continue;
                if (kind == KnowledgeKind::Forbidden &&
                    truth.edge_count() == p * (p - 1) / 2)
                    continue;
                const Knowledge knowledge = sample_knowledge(truth, kind, seed);
                CHECK(meek_closure(cpdag, knowledge) ==
                      testsupport::oracle_modified_cpdag(cpdag, knowledge));
                ++checked;
            }
        }
    }
    CHECK(checked >= 50);
}

TEST_CASE("R3 and R4 configurations orient correctly") {
    SUBCASE("R3") {
        // a - b, a - c, a - d, c -> b, d -> b, c and d nonadjacent.
        Cpdag g(4);  // a=0, b=1, c=2, d=3
        g.set_undirected(0, 1);
        g.set_undirected(0, 2);
        g.set_undirected(0, 3);
        g.set_directed(2, 1);
        g.set_directed(3, 1);
        const Cpdag closed = meek_closure(g, Knowledge::none(4));
        CHECK(closed.directed(0, 1));
        CHECK(closed == testsupport::oracle_modified_cpdag(g, Knowledge::none(4)));
    }
    SUBCASE("R4") {
        // a - b, a - c, a - d, c -> d, d -> b, c and b nonadjacent.
        Cpdag g(4);  // a=0, b=1, c=2, d=3
        g.set_undirected(0, 1);
        g.set_undirected(0, 2);
        g.set_undirected(0, 3);
        g.set_directed(2, 3);
        g.set_directed(3, 1);
        const Cpdag closed = meek_closure(g, Knowledge::none(4));
        CHECK(closed.directed(0, 1));
        CHECK(closed == testsupport::oracle_modified_cpdag(g, Knowledge::none(4)));
    }
}

TEST_CASE("contradicting knowledge is reported") {
    // cpdag with compelled 0 -> 1 (collider with 2).
    const Cpdag g = dag_to_cpdag(make_dag(3, {0, bit(0) | bit(2), 0}));
    CHECK_THROWS_AS(meek_closure(g, make_knowledge(3, {{1, 0}}, {}, {})), ValidationError);
    // Known edge between nonadjacent variables.
    CHECK_THROWS_AS(meek_closure(g, make_knowledge(3, {{0, 2}}, {}, {})), ValidationError);
    // Forbidden pair that is adjacent.
    CHECK_THROWS_AS(meek_closure(g, make_knowledge(3, {}, {{0, 1}}, {})), ValidationError);
    // Tier order against a compelled edge.
    CHECK_THROWS_AS(meek_closure(g, make_knowledge(3, {}, {}, {{1}, {0, 2}})), ValidationError);
}

TEST_CASE("tiers orient only cross-tier undirected edges") {
    // Chain cpdag 0 - 1 - 2, tiers {0} | {1} with 2 untiered.
    const Cpdag g = dag_to_cpdag(make_dag(3, {0, bit(0), bit(1)}));
    const Cpdag closed = meek_closure(g, make_knowledge(3, {}, {}, {{0}, {1}}));
    CHECK(closed.directed(0, 1));
    CHECK(closed.directed(1, 2));  // R1 follow-up, not a tier orientation
}

TEST_CASE("shd counts differing pair marks") {
    auto single = [](int p, auto&& f) {
        Cpdag g(p);
        f(g);
        return g;
    };
    const Cpdag directed = single(4, [](Cpdag& g) { g.set_directed(0, 1); });
    const Cpdag reversed = single(4, [](Cpdag& g) { g.set_directed(1, 0); });
    const Cpdag undirected = single(4, [](Cpdag& g) { g.set_undirected(0, 1); });
    const Cpdag empty(4);

    CHECK(shd(directed, directed) == 0);
    CHECK(shd(directed, reversed) == 1);
    CHECK(shd(directed, undirected) == 1);
    CHECK(shd(directed, empty) == 1);

    Cpdag three(4);
    three.set_directed(0, 1);
    three.set_directed(2, 3);
    three.set_undirected(1, 2);
    CHECK(shd(three, empty) == 3);
    CHECK(shd_scaled(three, empty) == doctest::Approx(0.5));
}

TEST_CASE("shd is a metric") {
    std::vector<Cpdag> graphs;
    for (std::uint64_t seed = 0; seed < 8; ++seed)
        graphs.push_back(dag_to_cpdag(sample_er_dag(5, 2.0, 60 + seed)));
    for (const auto& a : graphs)
        for (const auto& b : graphs) {
            CHECK(shd(a, b) == shd(b, a));
            CHECK((shd(a, b) == 0) == (a == b));
            for (const auto& c : graphs) CHECK(shd(a, c) <= shd(a, b) + shd(b, c));
        }
}

TEST_CASE("shd rejects mismatched dimensions") {
    CHECK_THROWS_AS(shd(Cpdag(3), Cpdag(4)), ValidationError);
}
