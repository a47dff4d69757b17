#include <doctest.h>

#include <cmath>

#include "fitrec/ensemble.hpp"
#include "fitrec/error.hpp"
#include "fitrec/metrics.hpp"
#include "fitrec/random.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fitrec;
using testutil::to_graph;

TEST_CASE("density examples") {
    CHECK(density(Graph::complete(4)) == 1.0);
    CHECK(density(Graph::empty(5)) == 0.0);
    CHECK(density(testutil::path3()) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(density(Graph::empty(1)), Error);
}

TEST_CASE("average nearest-neighbor degree examples") {
    for (std::size_t n : {3u, 5u, 9u}) CHECK(avg_nn_degree(Graph::complete(n)) == static_cast<double>(n - 1));
    CHECK(avg_nn_degree(testutil::star4()) == 2.5);
    CHECK(avg_nn_degree(Graph::empty(4)) == 0.0);
}

TEST_CASE("average nearest-neighbor degree matches brute force on a random N=6 graph") {
    Rng rng(6);
    const auto a = oracle::random_adjacency(6, 0.5, rng);
    CHECK(avg_nn_degree(to_graph(a)) == doctest::Approx(oracle::knn(a)).epsilon(1e-14));
}

TEST_CASE("clustering examples") {
    CHECK(mean_clustering(Graph::complete(3)) == 1.0);
    CHECK(mean_clustering(testutil::star4()) == 0.0);
    // K4 minus edge {2,3}: nodes 0,1 close 2 of 3 wedges, nodes 2,3 close 1 of 1
    // => (2 * 2/3 + 2 * 1) / 4 = 5/6
    std::vector<std::pair<std::size_t, std::size_t>> e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    CHECK(mean_clustering(Graph::from_edges(4, e)) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK_THROWS_AS(mean_clustering(Graph::complete(2)), Error);
}

TEST_CASE("rich-club examples") {
    // regular graphs: phi = -D / (1 - D)
    for (std::size_t n : {5u, 6u, 9u}) {
        const auto g = testutil::cycle(n);
        const double d = density(g);
        CHECK(rich_club(g) == doctest::Approx(-d / (1.0 - d)).epsilon(1e-14));
    }
    CHECK(rich_club(testutil::star4()) == doctest::Approx(-1.0).epsilon(1e-15));

    Rng rng(7);
    const auto a = oracle::random_adjacency(7, 0.5, rng);
    CHECK(rich_club(to_graph(a)) == doctest::Approx(oracle::rich_club(a)).epsilon(1e-13));
}

TEST_CASE("rich-club is undefined on a complete graph") {
    try {
        (void)rich_club(Graph::complete(5));
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate);
        CHECK(std::string(e.what()).find("D=1") != std::string::npos);
    }
    CHECK_FALSE(exact_metrics(Graph::complete(5)).rich_club.has_value());
}

TEST_CASE("property: exact kernels agree with brute-force oracles") {
    Rng rng(12345);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 3 + rng.below(6);
        const auto a = oracle::random_adjacency(n, 0.15 + 0.7 * rng.uniform(), rng);
        const auto g = to_graph(a);
        const auto r = exact_metrics(g);
        CHECK(std::abs(r.density - oracle::density(a)) <= 1e-12);
        CHECK(std::abs(r.knn - oracle::knn(a)) <= 1e-12);
        CHECK(std::abs(r.clustering - oracle::clustering(a)) <= 1e-12);
        if (oracle::density(a) < 1.0) {
            REQUIRE(r.rich_club.has_value());
            CHECK(std::abs(*r.rich_club - oracle::rich_club(a)) <= 1e-12);
        }
        CHECK(r.density >= 0.0);
        CHECK(r.density <= 1.0);
        CHECK(r.clustering >= 0.0);
        CHECK(r.clustering <= 1.0);
        CHECK(r.knn >= 0.0);
        CHECK(r.knn <= static_cast<double>(n - 1));
    }
}

TEST_CASE("property: plug-in metrics on a 0/1 matrix reproduce exact metrics") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng.below(10);
        const auto g = to_graph(oracle::random_adjacency(n, rng.uniform(), rng));
        const auto exact = exact_metrics(g);
        const auto plug = expected_metrics(ProbabilityMatrix::from_graph(g));
        CHECK(plug.density == doctest::Approx(exact.density).epsilon(1e-14));
        CHECK(plug.knn == doctest::Approx(exact.knn).epsilon(1e-14));
        CHECK(plug.clustering == doctest::Approx(exact.clustering).epsilon(1e-14));
        REQUIRE(plug.rich_club.has_value() == exact.rich_club.has_value());
        if (exact.rich_club) CHECK(*plug.rich_club == doctest::Approx(*exact.rich_club).epsilon(1e-14));
    }
}

TEST_CASE("plug-in metrics on a homogeneous matrix") {
    const std::size_t n = 7;
    const double q = 0.3;
    std::vector<double> p(n * n, q);
    for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 0.0;
    const auto r = expected_metrics(ProbabilityMatrix::from_values(n, p));
    CHECK(r.density == doctest::Approx(q).epsilon(1e-14));
    CHECK(r.clustering == doctest::Approx(q).epsilon(1e-14));
    CHECK(r.knn == doctest::Approx(q * (n - 1)).epsilon(1e-14));
}

TEST_CASE("plug-in density equals the enumerated ensemble mean (N=4, y=1..4, z=0.1)") {
    const FitnessEnsemble e(FitnessVector({1, 2, 3, 4}), 0.1);
    const auto p = e.probability_matrix();
    const double exact_mean = oracle::enumerated_mean_density(testutil::to_matrix(p));
    CHECK(std::abs(expected_metrics(p).density - exact_mean) <= 1e-12);
}

TEST_CASE("property: plug-in density equals enumeration on random N=4 matrices") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(16, 0.0);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) v[i * 4 + j] = v[j * 4 + i] = rng.uniform();
        const auto p = ProbabilityMatrix::from_values(4, v);
        CHECK(std::abs(expected_metrics(p).density - oracle::enumerated_mean_density(testutil::to_matrix(p))) <= 1e-10);
    }
}

TEST_CASE("probability matrix validation") {
    CHECK_THROWS_AS(ProbabilityMatrix::from_values(2, {0, 0.5, 0.4, 0}), Error);
    CHECK_THROWS_AS(ProbabilityMatrix::from_values(2, {0, 1.5, 1.5, 0}), Error);
    CHECK_THROWS_AS(ProbabilityMatrix::from_values(2, {0.1, 0.5, 0.5, 0}), Error);
    CHECK_THROWS_AS(expected_metrics(ProbabilityMatrix::from_values(2, {0, 0.5, 0.5, 0})), Error);
}

TEST_CASE("Monte Carlo on a 0/1 matrix has zero spread") {
    Rng rng(3);
    const auto g = to_graph(oracle::random_adjacency(8, 0.4, rng));
    const auto exact = exact_metrics(g);
    for (std::uint64_t seed : {1u, 77u}) {
        const auto mc = monte_carlo_metrics(ProbabilityMatrix::from_graph(g), 20, seed);
        for (auto prop : all_properties) {
            const auto& s = mc.get(prop);
            REQUIRE(s.has_value());
            CHECK(s->std == doctest::Approx(0.0));
            CHECK(s->mean == doctest::Approx(*exact.get(prop)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Monte Carlo is deterministic and independent of the worker count") {
    const FitnessEnsemble e(FitnessVector({1, 2, 3, 4, 5, 6, 7, 8}), 0.05);
    const auto p = e.probability_matrix();
    const auto a = monte_carlo_metrics(p, 200, 42, 1);
    const auto b = monte_carlo_metrics(p, 200, 42, 1);
    const auto c = monte_carlo_metrics(p, 200, 42, 4);
    for (auto prop : all_properties) {
        REQUIRE(a.get(prop).has_value());
        CHECK(a.get(prop)->mean == b.get(prop)->mean);
        CHECK(a.get(prop)->std == b.get(prop)->std);
        CHECK(a.get(prop)->mean == c.get(prop)->mean);
        CHECK(a.get(prop)->std == c.get(prop)->std);
    }
    CHECK_THROWS_AS(monte_carlo_metrics(p, 1, 0), Error);
}

TEST_CASE("Monte Carlo density converges to the plug-in value") {
    // uniform p = 0.5, N = 10: standard error sqrt(0.25 / C(10,2) / S)
    const std::size_t n = 10;
    const std::size_t samples = 10000;
    std::vector<double> v(n * n, 0.5);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 0.0;
    const auto mc = monte_carlo_metrics(ProbabilityMatrix::from_values(n, v), samples, 2024);
    const double se = std::sqrt(0.25 / 45.0 / static_cast<double>(samples));
    CHECK(std::abs(mc.get(Property::density)->mean - 0.5) <= 3.0 * se);
}
