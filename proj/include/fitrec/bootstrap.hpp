#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fitrec/ensemble.hpp"
#include "fitrec/metrics.hpp"

namespace fitrec {

/// Degrees k_i* known on a subset I of an N-node network.
class PartialObservation {
public:
    PartialObservation(std::size_t node_count, std::vector<std::size_t> subset, std::vector<double> degrees);

    /// Observation of `g` restricted to `subset`.
    static PartialObservation from_graph(const Graph& g, std::vector<std::size_t> subset);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t size() const noexcept { return subset_.size(); }
    std::span<const std::size_t> subset() const noexcept { return subset_; }
    std::span<const double> degrees() const noexcept { return degrees_; }

private:
    std::size_t n_;
    std::vector<std::size_t> subset_;
    std::vector<double> degrees_;
};

enum class EstimationMode { analytic, monte_carlo };

std::string_view to_string(EstimationMode m) noexcept;

struct ReconstructionEstimate {
    Property property = Property::density;
    double mean = 0.0;
    std::optional<double> std;  ///< analytic mode: density only
    EstimationMode method = EstimationMode::analytic;
    std::size_t samples = 0;    ///< 0 for analytic estimates
    double z = 0.0;
};

struct ReconstructionOptions {
    EstimationMode mode = EstimationMode::analytic;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

/// Calibrate z on the observed subset, then estimate each requested property
/// on Omega(z): plug-in means (analytic) or sample means and deviations
/// (monte_carlo).
std::vector<ReconstructionEstimate> reconstruct(const FitnessVector& y, const PartialObservation& obs,
                                                std::span<const Property> properties,
                                                const ReconstructionOptions& options = {});

/// Standard deviation of the density under independent Bernoulli edges:
/// 2 sqrt(sum_{i<j} p_ij (1 - p_ij)) / (N(N-1)).
double analytic_density_std(const ProbabilityMatrix& p);

} // namespace fitrec
