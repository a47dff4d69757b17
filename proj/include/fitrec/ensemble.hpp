#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fitrec/graph.hpp"
#include "fitrec/metrics.hpp"

namespace fitrec {

/// Fitness-induced random graph ensemble: pairs link independently with
/// p_ij = z y_i y_j / (1 + z y_i y_j).
class FitnessEnsemble {
public:
    FitnessEnsemble(FitnessVector y, double z);

    const FitnessVector& fitness() const noexcept { return y_; }
    double z() const noexcept { return z_; }
    std::size_t node_count() const noexcept { return y_.size(); }

    double link_probability(std::size_t i, std::size_t j) const;
    ProbabilityMatrix probability_matrix() const;
    std::vector<double> expected_degrees() const;
    Graph sample(std::uint64_t seed) const;

private:
    FitnessVector y_;
    double z_;
};

/// q / (1 + q) with q = z y_i y_j; saturates to 1 when q overflows.
double fitness_link_probability(double z, double yi, double yj) noexcept;

struct Calibration {
    double z = 0.0;
    double target = 0.0;     ///< sum of observed degrees over the subset
    double residual = 0.0;   ///< |sum_{i in I} <k_i> - target| at z
    double tolerance = 0.0;  ///< max(1e-9 * target, 1e-12)
    std::size_t evaluations = 0;
};

/// Solve sum_{i in I} sum_{j != i} p_ij(z) = sum_{i in I} k_i* for z.
/// Geometric bracketing (factor 10 from z = 1) then bisection on log z.
/// Throws ErrorCode::degenerate for a zero target and ErrorCode::infeasible
/// when the target reaches |I|(N-1).
Calibration calibrate_z(const FitnessVector& y, std::span<const std::size_t> subset,
                        std::span<const double> observed_degrees);

/// Same solver with I = all nodes and target sum d* N(N-1), i.e. the
/// coupling whose expected density equals `density`.
Calibration calibrate_to_density(const FitnessVector& y, double density);

/// Left-hand side of the calibration equation, exposed for testing.
double subset_expected_degree_sum(const FitnessVector& y, std::span<const std::size_t> subset, double z);

struct ConfigurationModelOptions {
    double tolerance = 1e-8;
    std::size_t max_iterations = 100000;
};

struct ConfigurationModelFit {
    std::vector<double> x;       ///< x_i = exp(-theta_i)
    double residual = 0.0;       ///< max_i |<k_i> - k_i*|
    std::size_t iterations = 0;  ///< completed sweeps

    ProbabilityMatrix probability_matrix() const;
};

/// Maximum-likelihood multipliers of the configuration model for a full
/// degree sequence. Gauss-Seidel fixed point in log space with adaptive
/// damping. Nodes with k_i* = 0 get x_i = 0.
ConfigurationModelFit fit_configuration_model(std::span<const double> degrees,
                                              const ConfigurationModelOptions& options = {});

} // namespace fitrec
