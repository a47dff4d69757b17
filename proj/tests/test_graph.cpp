#include <doctest.h>

#include <string>
#include <vector>

#include "fitrec/error.hpp"
#include "fitrec/graph.hpp"
#include "fitrec/random.hpp"

using namespace fitrec;

namespace {

WeightedDigraph dense(std::size_t n, std::vector<double> w) { return WeightedDigraph::from_dense(n, std::move(w)); }

WeightedDigraph random_weighted(std::size_t n, Rng& rng) {
    std::vector<double> w(n * n, 0.0);
    for (auto& x : w) x = rng.uniform() < 0.3 ? rng.uniform() * 10.0 : 0.0;
    return dense(n, std::move(w));
}

} // namespace

TEST_CASE("binarize links a pair when either direction carries weight") {
    const auto g = binarize(dense(2, {0, 5.0, 0, 0}));
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(g.edge_count() == 1);
}

TEST_CASE("binarize of all-zero weights is the empty graph") {
    const auto g = binarize(dense(3, std::vector<double>(9, 0.0)));
    CHECK(g.edge_count() == 0);
}

TEST_CASE("binarize builds the path 1-2-3") {
    // w_12 = 1, w_23 = 2
    const auto g = binarize(dense(3, {0, 1, 0, 0, 0, 2, 0, 0, 0}));
    CHECK(degrees(g) == std::vector<std::size_t>{1, 2, 1});
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("binarize ignores the diagonal") {
    const auto g = binarize(dense(2, {7.0, 0, 0, 3.0}));
    CHECK(g.edge_count() == 0);
}

TEST_CASE("out-strengths are row sums") {
    const auto pair = strengths(dense(2, {0, 5, 3, 0}));
    CHECK(pair[0] == 5.0);
    CHECK(pair[1] == 3.0);

    std::vector<double> uniform(16, 2.5);
    const auto s = strengths(dense(4, uniform));
    for (double v : s.values()) CHECK(v == doctest::Approx(7.5));

    const auto t = strengths(dense(3, {0, 1, 2, 4, 0, 0, 1, 1, 0}));
    CHECK(t[0] == 3.0);
    CHECK(t[1] == 4.0);
    CHECK(t[2] == 2.0);
}

TEST_CASE("total strength adds the column sum") {
    const auto s = strengths(dense(2, {0, 5, 3, 0}), StrengthMode::total);
    CHECK(s[0] == 8.0);
    CHECK(s[1] == 8.0);
}

TEST_CASE("zero-strength node is rejected by name") {
    auto g = WeightedDigraph::from_dense(3, {0, 1, 0, 1, 0, 0, 0, 0, 0}, {"a", "b", "c"});
    try {
        (void)strengths(g);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_argument);
        CHECK(std::string(e.what()).find("'c'") != std::string::npos);
        CHECK(std::string(e.what()).find("prune") != std::string::npos);
    }
}

TEST_CASE("degrees of canonical graphs") {
    CHECK(degrees(Graph::complete(4)) == std::vector<std::size_t>{3, 3, 3, 3});
    CHECK(degrees(Graph::empty(3)) == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(WeightedDigraph::from_dense(2, {0, -1, 0, 0}), Error);
    CHECK_THROWS_AS(WeightedDigraph::from_dense(0, {}), Error);
    CHECK_THROWS_AS(Graph::from_adjacency(2, {0, 1, 0, 0}), Error);  // asymmetric
    CHECK_THROWS_AS(Graph::from_adjacency(2, {1, 0, 0, 0}), Error);  // loop
    CHECK_THROWS_AS(FitnessVector({1.0, 0.0}), Error);
    CHECK_THROWS_AS(FitnessVector({1.0, -2.0}), Error);
}

TEST_CASE("property: binarize is symmetric, loop-free, transpose-invariant; sum k = 2L") {
    Rng rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(12);
        const auto w = random_weighted(n, rng);
        const auto g = binarize(w);

        std::vector<double> transposed(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) transposed[j * n + i] = w.weight(i, j);
        CHECK(binarize(dense(n, transposed)) == g);

        std::size_t sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK_FALSE(g.has_edge(i, i));
            for (std::size_t j = 0; j < n; ++j) CHECK(g.has_edge(i, j) == g.has_edge(j, i));
            sum += g.degree(i);
            CHECK(g.degree(i) <= n - 1);
        }
        CHECK(sum == 2 * g.edge_count());
        CHECK(g.edge_count() <= n * (n - 1) / 2);
    }
}
