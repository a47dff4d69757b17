#include "fitrec/bootstrap.hpp"

#include <cmath>

#include "fitrec/error.hpp"

namespace fitrec {

std::string_view to_string(EstimationMode m) noexcept {
    return m == EstimationMode::analytic ? "analytic-plugin" : "monte-carlo";
}

PartialObservation::PartialObservation(std::size_t node_count, std::vector<std::size_t> subset,
                                       std::vector<double> degrees)
    : n_(node_count), subset_(std::move(subset)), degrees_(std::move(degrees)) {
    if (subset_.size() != degrees_.size())
        fail(ErrorCode::invalid_argument, "subset and observed degrees differ in length");
    std::vector<bool> seen(n_, false);
    const double cap = n_ == 0 ? 0.0 : static_cast<double>(n_ - 1);
    for (std::size_t k = 0; k < subset_.size(); ++k) {
        const std::size_t i = subset_[k];
        if (i >= n_) fail(ErrorCode::invalid_argument, "observed node index " + std::to_string(i) + " out of range");
        if (seen[i]) fail(ErrorCode::invalid_argument, "observed node index " + std::to_string(i) + " repeated");
        seen[i] = true;
        if (!std::isfinite(degrees_[k]) || degrees_[k] < 0.0 || degrees_[k] > cap)
            fail(ErrorCode::invalid_argument, "observed degree of node " + std::to_string(i) + " outside [0, N-1]");
    }
}

PartialObservation PartialObservation::from_graph(const Graph& g, std::vector<std::size_t> subset) {
    std::vector<double> k;
    k.reserve(subset.size());
    for (std::size_t i : subset) {
        if (i >= g.node_count()) fail(ErrorCode::invalid_argument, "subset index out of range");
        k.push_back(static_cast<double>(g.degree(i)));
    }
    return PartialObservation(g.node_count(), std::move(subset), std::move(k));
}

double analytic_density_std(const ProbabilityMatrix& p) {
    const std::size_t n = p.node_count();
    if (n < 2) fail(ErrorCode::invalid_argument, "density requires at least 2 nodes");
    double variance = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) variance += p(i, j) * (1.0 - p(i, j));
    return 2.0 * std::sqrt(variance) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::vector<ReconstructionEstimate> reconstruct(const FitnessVector& y, const PartialObservation& obs,
                                                std::span<const Property> properties,
                                                const ReconstructionOptions& options) {
    if (obs.node_count() != y.size())
        fail(ErrorCode::invalid_argument, "observation and fitness vector cover different node counts");
    if (properties.empty()) fail(ErrorCode::invalid_argument, "no properties requested");

    const auto calibration = calibrate_z(y, obs.subset(), obs.degrees());
    const FitnessEnsemble ensemble(y, calibration.z);
    const auto p = ensemble.probability_matrix();

    std::vector<ReconstructionEstimate> out;
    out.reserve(properties.size());
    if (options.mode == EstimationMode::analytic) {
        const auto report = expected_metrics(p);
        for (auto prop : properties) {
            ReconstructionEstimate e;
            e.property = prop;
            e.method = EstimationMode::analytic;
            e.z = calibration.z;
            const auto mean = report.get(prop);
            if (!mean) fail(ErrorCode::degenerate, "rich-club undefined at D=1");
            e.mean = *mean;
            if (prop == Property::density) e.std = analytic_density_std(p);
            out.push_back(e);
        }
        return out;
    }

    const auto mc = monte_carlo_metrics(p, options.samples, options.seed, options.threads);
    for (auto prop : properties) {
        const auto& summary = mc.get(prop);
        if (!summary)
            fail(ErrorCode::degenerate, std::string(to_string(prop)) + " undefined on fewer than two samples");
        ReconstructionEstimate e;
        e.property = prop;
        e.method = EstimationMode::monte_carlo;
        e.samples = options.samples;
        e.z = calibration.z;
        e.mean = summary->mean;
        e.std = summary->std;
        out.push_back(e);
    }
    return out;
}

} // namespace fitrec
