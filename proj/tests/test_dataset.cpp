#include <doctest.h>

#include <cmath>

#include "causal/dataset.hpp"
#include "causal/synthgen.hpp"

using namespace causal;

static Dataset testsupport_random() {
    Rng rng(77);
    std::vector<std::vector<double>> raw(3, std::vector<double>(20));
    for (auto& col : raw)
        for (double& v : col) v = rng.normal(0.0, 1.0);
    return dataset_from_columns(default_names(3), std::move(raw));
}

TEST_CASE("load_csv centers columns and computes the gram matrix") {
    const Dataset data = parse_csv("a,b\n1,2\n3,4\n");
    CHECK(data.p == 2);
    CHECK(data.n == 2);
    CHECK(data.names == std::vector<std::string>{"a", "b"});
    CHECK(data.columns[0] == std::vector<double>{-1.0, 1.0});
    CHECK(data.columns[1] == std::vector<double>{-1.0, 1.0});
    CHECK(data.gram_at(0, 0) == doctest::Approx(2.0));
    CHECK(data.gram_at(0, 1) == doctest::Approx(2.0));
    CHECK(data.gram_at(1, 0) == doctest::Approx(2.0));
    CHECK(data.gram_at(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("constant column is accepted with the zero-variance flag") {
    const Dataset data = parse_csv("a,b\n5,1\n5,2\n5,3\n");
    CHECK(data.gram_at(0, 0) == doctest::Approx(0.0));
    CHECK(data.zero_variance[0]);
    CHECK_FALSE(data.zero_variance[1]);
}

TEST_CASE("parse errors name the line and column") {
    CHECK_THROWS_WITH_AS(parse_csv("a,b\n1,abc\n"),
                         doctest::Contains("cell 'abc' in column 'b'"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_csv("a,b\n1,2\n3\n"), doctest::Contains(":3"), ValidationError);
    CHECK_THROWS_AS(parse_csv("a,a\n1,2\n"), ValidationError);   // duplicate header
    CHECK_THROWS_AS(parse_csv("a,b\n"), ValidationError);        // no rows
    CHECK_THROWS_AS(parse_csv("a,b\n1,\n"), ValidationError);    // missing value
    CHECK_THROWS_AS(parse_csv(""), ValidationError);             // empty file
}

TEST_CASE("csv accepts crlf and custom delimiters") {
    const Dataset data = parse_csv("a;b\r\n1;2\r\n3;4\r\n", ';');
    CHECK(data.p == 2);
    CHECK(data.n == 2);
}

TEST_CASE("more than 64 variables are rejected") {
    std::string header = "v0";
    for (int i = 1; i < 65; ++i) header += ",v" + std::to_string(i);
    std::string row = "1";
    for (int i = 1; i < 65; ++i) row += ",1";
    CHECK_THROWS_AS(parse_csv(header + "\n" + row + "\n"), ValidationError);
}

TEST_CASE("gram matches naive dot products on random data") {
    Rng rng(512);
    for (int trial = 0; trial < 5; ++trial) {
        const int p = 4, n = 37;
        std::vector<std::vector<double>> raw(p, std::vector<double>(n));
        for (auto& col : raw)
            for (double& v : col) v = rng.uniform(-3.0, 3.0);
        const Dataset data = dataset_from_columns(default_names(p), raw);

        for (int i = 0; i < p; ++i) {
            double sum = 0.0;
            for (double v : data.columns[i]) sum += v;
            CHECK(std::abs(sum) <= 1e-9 * n * 3.0);  // centered
            for (int j = 0; j < p; ++j) {
                double dot = 0.0;
                for (int r = 0; r < n; ++r) dot += data.columns[i][r] * data.columns[j][r];
                CHECK(data.gram_at(i, j) == doctest::Approx(dot).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("load is deterministic") {
    const std::string text = "a,b,c\n0.25,-1,4\n2,3.5,-0.125\n1,1,1\n";
    const Dataset first = parse_csv(text);
    const Dataset second = parse_csv(text);
    CHECK(first.columns == second.columns);
    CHECK(first.gram == second.gram);
}

TEST_CASE("gram_submatrix slices the precomputed matrix") {
    const Dataset data = testsupport_random();
    SUBCASE("empty selection") {
        const GramView view = gram_submatrix(data, 0, 2);
        CHECK(view.k == 0);
        CHECK(view.g_ss.empty());
        CHECK(view.c_s.empty());
        CHECK(view.s_tt == data.gram_at(2, 2));
    }
    SUBCASE("singleton") {
        const GramView view = gram_submatrix(data, bit(1), 0);
        REQUIRE(view.k == 1);
        CHECK(view.g_ss[0] == data.gram_at(1, 1));
        CHECK(view.c_s[0] == data.gram_at(1, 0));
        CHECK(view.s_tt == data.gram_at(0, 0));
    }
    SUBCASE("pair matches direct dot products") {
        const GramView view = gram_submatrix(data, bit(0) | bit(2), 1);
        REQUIRE(view.k == 2);
        auto dot = [&](int i, int j) {
            double sum = 0.0;
            for (int r = 0; r < data.n; ++r) sum += data.columns[i][r] * data.columns[j][r];
            return sum;
        };
        CHECK(view.g_ss[0] == doctest::Approx(dot(0, 0)).epsilon(1e-12));
        CHECK(view.g_ss[1] == doctest::Approx(dot(0, 2)).epsilon(1e-12));
        CHECK(view.g_ss[2] == doctest::Approx(dot(2, 0)).epsilon(1e-12));
        CHECK(view.g_ss[3] == doctest::Approx(dot(2, 2)).epsilon(1e-12));
        CHECK(view.c_s[0] == doctest::Approx(dot(0, 1)).epsilon(1e-12));
        CHECK(view.c_s[1] == doctest::Approx(dot(2, 1)).epsilon(1e-12));
    }
}
