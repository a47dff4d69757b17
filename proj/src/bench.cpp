#include "fitrec/bench.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fitrec/bootstrap.hpp"
#include "fitrec/error.hpp"
#include "fitrec/parallel.hpp"
#include "fitrec/random.hpp"

namespace fitrec {

std::string_view to_string(Flavor f) noexcept {
    switch (f) {
    case Flavor::single_realization: return "r0";
    case Flavor::ensemble: return "rOmega0";
    case Flavor::real: return "rR";
    }
    return "unknown";
}

std::optional<double> BenchmarkResult::rrmse(Property p, std::size_t n, Flavor f) const {
    for (const auto& c : cells)
        if (c.property == p && c.n == n && c.flavor == f) return c.rrmse;
    return std::nullopt;
}

double rrmse(std::span<const double> estimates, double reference) {
    if (estimates.empty()) fail(ErrorCode::invalid_argument, "rRMSE needs at least one estimate");
    if (reference == 0.0) fail(ErrorCode::degenerate, "reference vanishes; rRMSE undefined");
    double s = 0.0;
    for (double x : estimates) {
        const double r = x / reference - 1.0;
        s += r * r;
    }
    return std::sqrt(s / static_cast<double>(estimates.size()));
}

namespace {

// seed stream tags
constexpr std::uint64_t kGroundTruthStream = 0;
constexpr std::uint64_t kSubsetStream = 1;
constexpr std::uint64_t kMonteCarloStream = 2;

void validate(const BenchmarkConfig& cfg, std::size_t n_nodes) {
    std::vector<std::string> problems;
    if (n_nodes < 3) problems.push_back("benchmark needs at least 3 nodes");
    if (cfg.n_values.empty()) problems.push_back("n grid is empty");
    for (auto n : cfg.n_values)
        if (n < 1 || n > n_nodes)
            problems.push_back("subset size " + std::to_string(n) + " outside [1, " + std::to_string(n_nodes) + "]");
    if (cfg.subsets < 1) problems.push_back("number of subsets M must be at least 1");
    if (cfg.monte_carlo && cfg.samples < 2) problems.push_back("Monte Carlo estimates need at least 2 samples");
    if (cfg.properties.empty()) problems.push_back("no properties selected");
    if (!problems.empty()) {
        std::string msg = "invalid benchmark configuration:";
        for (const auto& p : problems) msg += " " + p + ";";
        fail(ErrorCode::invalid_argument, msg);
    }
}

ProbabilityMatrix limit_matrix(std::size_t n, double value) {
    std::vector<double> p(n * n, value);
    for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 0.0;
    return ProbabilityMatrix::from_values(n, std::move(p));
}

struct CellOutcome {
    double z = 0.0;
    std::array<std::optional<double>, 4> estimate;
    std::size_t failures = 0;
    bool boundary = false;
};

CellOutcome run_cell(const Graph& g0, const FitnessVector& y, const BenchmarkConfig& cfg, std::size_t n,
                     std::size_t alpha) {
    const std::size_t n_nodes = g0.node_count();
    const std::size_t budget = 10 * cfg.subsets;
    CellOutcome out;
    std::optional<ProbabilityMatrix> p;
    for (std::uint64_t attempt = 0; !p; ++attempt) {
        Rng rng(derive_seed(cfg.seed, {kSubsetStream, n, alpha, attempt}));
        auto obs = PartialObservation::from_graph(g0, sample_without_replacement(n_nodes, n, rng));
        try {
            const auto c = calibrate_z(y, obs.subset(), obs.degrees());
            out.z = c.z;
            p = FitnessEnsemble(y, c.z).probability_matrix();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate && e.code() != ErrorCode::infeasible) throw;
            if (cfg.boundary == BoundaryPolicy::limit) {
                const bool empty = e.code() == ErrorCode::degenerate;
                out.z = empty ? 0.0 : std::numeric_limits<double>::infinity();
                out.boundary = true;
                p = limit_matrix(n_nodes, empty ? 0.0 : 1.0);
                break;
            }
            if (++out.failures > budget) {
                std::ostringstream msg;
                msg << "aborting: " << out.failures << " consecutive infeasible subsets at n=" << n
                    << " (subset " << alpha << ")";
                fail(ErrorCode::infeasible, msg.str());
            }
        }
    }

    if (!cfg.monte_carlo) {
        const auto report = expected_metrics(*p);
        for (auto prop : all_properties) out.estimate[static_cast<std::size_t>(prop)] = report.get(prop);
    } else {
        const auto mc = monte_carlo_metrics(*p, cfg.samples, derive_seed(cfg.seed, {kMonteCarloStream, n, alpha}));
        for (auto prop : all_properties) {
            const auto& s = mc.get(prop);
            if (s) out.estimate[static_cast<std::size_t>(prop)] = s->mean;
        }
    }
    return out;
}

void run_subsets(const Graph& g0, const FitnessVector& y, BenchmarkResult& result) {
    const auto& cfg = result.config;
    const std::size_t m = cfg.subsets;
    const std::size_t total = cfg.n_values.size() * m;
    std::vector<CellOutcome> outcomes(total);
    parallel_for(total, cfg.threads, [&](std::size_t cell) {
        outcomes[cell] = run_cell(g0, y, cfg, cfg.n_values[cell / m], cell % m);
    });

    for (std::size_t k = 0; k < cfg.n_values.size(); ++k) {
        SubsetSizeResult size;
        size.n = cfg.n_values[k];
        for (auto& v : size.estimates) v.reserve(m);
        for (std::size_t alpha = 0; alpha < m; ++alpha) {
            const auto& o = outcomes[k * m + alpha];
            size.z.push_back(o.z);
            size.failures += o.failures;
            size.boundary_hits += o.boundary ? 1 : 0;
            for (std::size_t prop = 0; prop < 4; ++prop) size.estimates[prop].push_back(o.estimate[prop]);
        }
        if (size.failures > 0)
            result.notices.push_back("n=" + std::to_string(size.n) + ": resampled " + std::to_string(size.failures) +
                                     " infeasible subsets");
        if (size.boundary_hits > 0)
            result.notices.push_back("n=" + std::to_string(size.n) + ": " + std::to_string(size.boundary_hits) +
                                     " subsets used the limiting ensemble");
        result.sizes.push_back(std::move(size));
    }
}

void score(BenchmarkResult& result, Flavor flavor, const std::array<std::optional<double>, 4>& reference) {
    for (const auto& size : result.sizes) {
        for (auto prop : result.config.properties) {
            const auto idx = static_cast<std::size_t>(prop);
            BenchmarkCell cell{prop, size.n, flavor, std::nullopt};
            const std::string where = std::string(to_string(prop)) + " n=" + std::to_string(size.n) + " " +
                                      std::string(to_string(flavor));
            std::vector<double> values;
            bool complete = true;
            for (const auto& e : size.estimates[idx]) {
                if (!e) {
                    complete = false;
                    break;
                }
                values.push_back(*e);
            }
            if (!reference[idx]) {
                result.notices.push_back(where + ": skipped, reference undefined (D=1)");
            } else if (!complete) {
                result.notices.push_back(where + ": skipped, an estimate is undefined (D=1)");
            } else if (*reference[idx] == 0.0) {
                result.notices.push_back(where + ": skipped, reference vanishes");
            } else {
                cell.rrmse = rrmse(values, *reference[idx]);
            }
            result.cells.push_back(cell);
        }
    }
}

std::array<std::optional<double>, 4> as_array(const MetricsReport& r) {
    std::array<std::optional<double>, 4> out;
    for (auto prop : all_properties) out[static_cast<std::size_t>(prop)] = r.get(prop);
    return out;
}

} // namespace

BenchmarkResult run_synthetic_benchmark(const FitnessVector& y, double target_density, const BenchmarkConfig& config) {
    validate(config, y.size());
    BenchmarkResult result;
    result.config = config;
    result.synthetic = true;
    result.node_count = y.size();
    result.target_density = target_density;

    const auto generating = calibrate_to_density(y, target_density);
    result.z_generating = generating.z;
    auto g0 = FitnessEnsemble(y, generating.z).sample(derive_seed(config.seed, {kGroundTruthStream}));

    std::vector<std::size_t> all(y.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto full = PartialObservation::from_graph(g0, all);
    const auto reference = calibrate_z(y, full.subset(), full.degrees());
    result.z_reference = reference.z;

    result.reference_observed = as_array(exact_metrics(g0));
    result.reference_ensemble = as_array(expected_metrics(FitnessEnsemble(y, reference.z).probability_matrix()));

    run_subsets(g0, y, result);
    score(result, Flavor::single_realization, result.reference_observed);
    score(result, Flavor::ensemble, result.reference_ensemble);
    result.g0 = std::move(g0);
    return result;
}

BenchmarkResult run_real_benchmark(const Graph& g0, const FitnessVector& y, const BenchmarkConfig& config) {
    if (g0.node_count() != y.size())
        fail(ErrorCode::invalid_argument, "graph and fitness vector cover different node counts");
    validate(config, y.size());
    BenchmarkResult result;
    result.config = config;
    result.synthetic = false;
    result.node_count = y.size();
    result.reference_observed = as_array(exact_metrics(g0));
    run_subsets(g0, y, result);
    score(result, Flavor::real, result.reference_observed);
    return result;
}

FitnessVector lognormal_fitness(std::size_t n, double mu, double sigma, std::uint64_t seed) {
    if (n == 0) fail(ErrorCode::invalid_argument, "fitness generator needs N >= 1");
    if (!std::isfinite(mu) || !(sigma >= 0.0) || !std::isfinite(sigma))
        fail(ErrorCode::invalid_argument, "log-normal parameters must be finite with sigma >= 0");
    Rng rng(seed);
    std::vector<double> y(n);
    for (auto& v : y) v = std::exp(mu + sigma * rng.normal());
    return FitnessVector(std::move(y));
}

FitnessVector powerlaw_fitness(std::size_t n, double gamma, double xmin, std::uint64_t seed) {
    if (n == 0) fail(ErrorCode::invalid_argument, "fitness generator needs N >= 1");
    if (!(gamma > 1.0) || !std::isfinite(gamma) || !(xmin > 0.0) || !std::isfinite(xmin))
        fail(ErrorCode::invalid_argument, "power-law parameters need gamma > 1 and xmin > 0");
    Rng rng(seed);
    std::vector<double> y(n);
    // inverse CDF on 1 - u in (0, 1]
    for (auto& v : y) v = xmin * std::pow(1.0 - rng.uniform(), -1.0 / (gamma - 1.0));
    return FitnessVector(std::move(y));
}

} // namespace fitrec
