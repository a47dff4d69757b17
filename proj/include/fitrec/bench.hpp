#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fitrec/ensemble.hpp"
#include "fitrec/metrics.hpp"

namespace fitrec {

/// Reference against which subset estimates are scored.
enum class Flavor {
    single_realization,  ///< X(G0) on one synthetic draw ("r0")
    ensemble,            ///< plug-in value on the ground-truth ensemble ("rOmega0")
    real,                ///< X measured on a supplied network ("rR")
};

std::string_view to_string(Flavor f) noexcept;

/// What to do when a random subset has a degree sum of 0 or |I|(N-1).
enum class BoundaryPolicy {
    resample,  ///< draw another subset; abort after 10*M consecutive failures
    limit,     ///< use the z -> 0 / z -> infinity limiting ensemble
};

struct BenchmarkConfig {
    std::vector<std::size_t> n_values;
    std::size_t subsets = 100;     ///< M
    std::size_t samples = 1000;    ///< Monte Carlo samples per estimate
    std::uint64_t seed = 0;
    bool monte_carlo = false;      ///< estimate X_alpha by sampling instead of plug-in
    std::vector<Property> properties{all_properties.begin(), all_properties.end()};
    BoundaryPolicy boundary = BoundaryPolicy::resample;
    std::size_t threads = 1;
};

struct SubsetSizeResult {
    std::size_t n = 0;
    std::vector<double> z;  ///< calibrated coupling per subset (0 / inf at a limit)
    /// estimates[property][alpha]; empty optional where the property is undefined
    std::array<std::vector<std::optional<double>>, 4> estimates;
    std::size_t failures = 0;        ///< resampled subsets
    std::size_t boundary_hits = 0;   ///< limit-policy substitutions
};

struct BenchmarkCell {
    Property property = Property::density;
    std::size_t n = 0;
    Flavor flavor = Flavor::single_realization;
    std::optional<double> rrmse;
};

struct BenchmarkResult {
    BenchmarkConfig config;
    bool synthetic = true;
    std::size_t node_count = 0;
    std::optional<double> target_density;
    std::optional<double> z_generating;  ///< synthetic: coupling that hits the target density
    std::optional<double> z_reference;   ///< synthetic: full-information calibration on G0
    std::optional<Graph> g0;             ///< synthetic: the sampled ground truth
    std::array<std::optional<double>, 4> reference_observed;  ///< X(G0)
    std::array<std::optional<double>, 4> reference_ensemble;  ///< plug-in on Omega(z0)
    std::vector<SubsetSizeResult> sizes;
    std::vector<BenchmarkCell> cells;
    std::vector<std::string> notices;

    std::optional<double> rrmse(Property p, std::size_t n, Flavor f) const;
};

/// sqrt(mean((X_alpha / X0 - 1)^2)). Throws when X0 == 0.
double rrmse(std::span<const double> estimates, double reference);

/// Synthetic protocol: the generating coupling reproduces `target_density`
/// in expectation; G0 is one draw from it; the reference ensemble Omega(z0)
/// is calibrated on all of G0's degrees. Emits r0 and rOmega0.
BenchmarkResult run_synthetic_benchmark(const FitnessVector& y, double target_density,
                                        const BenchmarkConfig& config);

/// Real-network protocol against a supplied G0. Emits rR.
BenchmarkResult run_real_benchmark(const Graph& g0, const FitnessVector& y, const BenchmarkConfig& config);

/// Log-normal fitness exp(mu + sigma * Z), Z standard normal.
FitnessVector lognormal_fitness(std::size_t n, double mu, double sigma, std::uint64_t seed);

/// Pareto fitness with density ~ y^-gamma on [xmin, inf), gamma > 1.
FitnessVector powerlaw_fitness(std::size_t n, double gamma, double xmin, std::uint64_t seed);

} // namespace fitrec
