#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "fitrec/bench.hpp"
#include "fitrec/error.hpp"
#include "fitrec/io.hpp"
#include "fitrec/random.hpp"

using namespace fitrec;

namespace {

BenchmarkConfig config(std::vector<std::size_t> grid, std::size_t m, std::uint64_t seed) {
    BenchmarkConfig cfg;
    cfg.n_values = std::move(grid);
    cfg.subsets = m;
    cfg.seed = seed;
    return cfg;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

} // namespace

TEST_CASE("rrmse examples") {
    CHECK(rrmse(std::vector<double>{2.0, 2.0, 2.0}, 2.0) == 0.0);
    CHECK(rrmse(std::vector<double>{1.1, 0.9}, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
    const std::vector<double> x{0.3, 0.7, 1.9};
    const std::vector<double> scaled{0.3 * 7.5, 0.7 * 7.5, 1.9 * 7.5};
    CHECK(rrmse(scaled, 7.5) == doctest::Approx(rrmse(x, 1.0)).epsilon(1e-14));
    try {
        (void)rrmse(x, 0.0);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate);
        CHECK(std::string(e.what()) == "reference vanishes; rRMSE undefined");
    }
    CHECK_THROWS_AS(rrmse(std::vector<double>{}, 1.0), Error);
}

TEST_CASE("full-information limit") {
    const auto y = lognormal_fitness(40, 0.0, 1.0, 7);
    bool gap = false;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto r = run_synthetic_benchmark(y, 0.3, config({40}, 3, seed));
        for (auto p : all_properties) {
            const auto omega = r.rrmse(p, 40, Flavor::ensemble);
            REQUIRE(omega.has_value());
            CHECK(*omega <= 1e-6);
            const auto single = r.rrmse(p, 40, Flavor::single_realization);
            REQUIRE(single.has_value());
            gap = gap || *single > 0.0;
        }
        for (double z : r.sizes[0].z) CHECK(z == doctest::Approx(*r.z_reference).epsilon(1e-9));
    }
    CHECK(gap);
}

TEST_CASE("homogeneous N=30: ensemble error does not grow with n") {
    const FitnessVector y(std::vector<double>(30, 1.0));
    const auto r = run_synthetic_benchmark(y, 0.5, config({3, 10, 30}, 40, 11));
    std::vector<double> medians;
    for (const auto& size : r.sizes) {
        std::vector<double> errors;
        const double ref = *r.reference_ensemble[0];
        for (const auto& e : size.estimates[0]) errors.push_back(std::abs(*e / ref - 1.0));
        medians.push_back(median(errors));
    }
    CHECK(medians[0] >= medians[1]);
    CHECK(medians[1] >= medians[2]);
    CHECK(*r.rrmse(Property::density, 3, Flavor::ensemble) >= *r.rrmse(Property::density, 30, Flavor::ensemble));
}

TEST_CASE("real benchmark on the synthetic ground truth reproduces r0") {
    const auto y = lognormal_fitness(35, 0.0, 1.0, 3);
    const auto cfg = config({4, 12, 35}, 10, 21);
    const auto syn = run_synthetic_benchmark(y, 0.25, cfg);
    const auto real = run_real_benchmark(*syn.g0, y, cfg);
    for (std::size_t n : cfg.n_values)
        for (auto p : all_properties) {
            const auto a = syn.rrmse(p, n, Flavor::single_realization);
            const auto b = real.rrmse(p, n, Flavor::real);
            REQUIRE(a.has_value() == b.has_value());
            if (a) CHECK(*a == *b);
        }
    CHECK(real.sizes[2].z == syn.sizes[2].z);
}

TEST_CASE("complete graph: resampling never succeeds, the limit policy saturates") {
    const auto k10 = Graph::complete(10);
    const FitnessVector y(std::vector<double>(10, 1.0));
    auto cfg = config({10}, 3, 4);
    try {
        (void)run_real_benchmark(k10, y, cfg);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::infeasible);
        CHECK(std::string(e.what()).find("consecutive") != std::string::npos);
    }
    cfg.boundary = BoundaryPolicy::limit;
    const auto r = run_real_benchmark(k10, y, cfg);
    CHECK(*r.rrmse(Property::density, 10, Flavor::real) == 0.0);
    CHECK(*r.rrmse(Property::knn, 10, Flavor::real) == 0.0);
    CHECK(*r.rrmse(Property::clustering, 10, Flavor::real) == 0.0);
    CHECK_FALSE(r.rrmse(Property::rich_club, 10, Flavor::real).has_value());
    CHECK(r.sizes[0].boundary_hits == 3);
    CHECK(std::isinf(r.sizes[0].z[0]));
    const bool noted = std::any_of(r.notices.begin(), r.notices.end(),
                                   [](const std::string& s) { return s.find("rich_club") != std::string::npos; });
    CHECK(noted);
}

TEST_CASE("small subsets that hit a boundary are resampled and counted") {
    // a star: leaves have degree 1, the hub has degree N-1
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 1; i < 8; ++i) e.emplace_back(0, i);
    e.emplace_back(1, 2);
    const auto g = Graph::from_edges(8, e);
    const FitnessVector y(std::vector<double>{5, 2, 2, 1, 1, 1, 1, 1});
    const auto r = run_real_benchmark(g, y, config({1}, 60, 9));
    CHECK(r.sizes[0].failures > 0);
    for (double z : r.sizes[0].z) CHECK(std::isfinite(z));
    CHECK_FALSE(r.notices.empty());
}

TEST_CASE("benchmark output is reproducible and independent of the worker count") {
    const auto y = lognormal_fitness(30, 0.0, 1.0, 5);
    auto cfg = config({3, 15, 30}, 12, 77);
    const auto a = io::write_benchmark(run_synthetic_benchmark(y, 0.3, cfg), io::Format::csv);
    const auto b = io::write_benchmark(run_synthetic_benchmark(y, 0.3, cfg), io::Format::csv);
    cfg.threads = 4;
    const auto c = io::write_benchmark(run_synthetic_benchmark(y, 0.3, cfg), io::Format::csv);
    CHECK(a == b);
    CHECK(a == c);

    cfg.monte_carlo = true;
    cfg.samples = 20;
    const auto d = io::write_benchmark(run_synthetic_benchmark(y, 0.3, cfg), io::Format::json);
    cfg.threads = 1;
    const auto f = io::write_benchmark(run_synthetic_benchmark(y, 0.3, cfg), io::Format::json);
    CHECK(d == f);
}

TEST_CASE("subset inclusion is uniform") {
    const std::size_t nodes = 20;
    const std::size_t n = 5;
    const std::size_t trials = 20000;
    std::vector<double> hits(nodes, 0.0);
    for (std::size_t alpha = 0; alpha < trials; ++alpha) {
        Rng rng(derive_seed(123, {1, n, alpha, 0}));
        for (std::size_t i : sample_without_replacement(nodes, n, rng)) hits[i] += 1.0;
    }
    const double q = static_cast<double>(n) / nodes;
    const double sigma = std::sqrt(trials * q * (1.0 - q));
    for (double h : hits) CHECK(std::abs(h - trials * q) <= 4.0 * sigma);
}

TEST_CASE("benchmark configuration errors are reported together") {
    const FitnessVector y(std::vector<double>(6, 1.0));
    BenchmarkConfig cfg;
    cfg.n_values = {0, 9};
    cfg.subsets = 0;
    try {
        (void)run_synthetic_benchmark(y, 0.4, cfg);
        FAIL("expected rejection");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("subset size 0") != std::string::npos);
        CHECK(msg.find("subset size 9") != std::string::npos);
        CHECK(msg.find("M must be") != std::string::npos);
    }
}

TEST_CASE("fitness generators") {
    const auto a = lognormal_fitness(1000, 0.5, 0.0, 1);
    for (double v : a.values()) CHECK(v == doctest::Approx(std::exp(0.5)));
    const auto b = powerlaw_fitness(2000, 2.5, 1.5, 3);
    for (double v : b.values()) CHECK(v >= 1.5);
    CHECK(lognormal_fitness(10, 0.0, 1.0, 8).values()[3] == lognormal_fitness(10, 0.0, 1.0, 8).values()[3]);
    CHECK_THROWS_AS(powerlaw_fitness(10, 1.0, 1.0, 1), Error);
    CHECK_THROWS_AS(lognormal_fitness(0, 0.0, 1.0, 1), Error);
}
