#include "fitrec/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fitrec/error.hpp"

namespace fitrec {

double fitness_link_probability(double z, double yi, double yj) noexcept {
    const double q = z * yi * yj;
    if (std::isinf(q)) return 1.0;
    return q / (1.0 + q);
}

FitnessEnsemble::FitnessEnsemble(FitnessVector y, double z) : y_(std::move(y)), z_(z) {
    if (!(z > 0.0) || !std::isfinite(z)) fail(ErrorCode::invalid_argument, "coupling z must be positive and finite");
}

double FitnessEnsemble::link_probability(std::size_t i, std::size_t j) const {
    if (i >= node_count() || j >= node_count()) fail(ErrorCode::invalid_argument, "node index out of range");
    if (i == j) fail(ErrorCode::invalid_argument, "link probability is undefined for i == j");
    return fitness_link_probability(z_, y_[i], y_[j]);
}

ProbabilityMatrix FitnessEnsemble::probability_matrix() const {
    const std::size_t n = node_count();
    std::vector<double> p(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            p[i * n + j] = p[j * n + i] = fitness_link_probability(z_, y_[i], y_[j]);
    return ProbabilityMatrix::from_values(n, std::move(p));
}

std::vector<double> FitnessEnsemble::expected_degrees() const {
    const std::size_t n = node_count();
    std::vector<double> k(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) k[i] += fitness_link_probability(z_, y_[i], y_[j]);
    return k;
}

Graph FitnessEnsemble::sample(std::uint64_t seed) const {
    return sample_graph(probability_matrix(), seed, y_.labels());
}

double subset_expected_degree_sum(const FitnessVector& y, std::span<const std::size_t> subset, double z) {
    const std::size_t n = y.size();
    const auto values = y.values();
    double total = 0.0;
    for (std::size_t i : subset) {
        const double zy = z * values[i];
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double q = zy * values[j];
            row += std::isinf(q) ? 1.0 : q / (1.0 + q);
        }
        total += row;
    }
    return total;
}

namespace {

void validate_subset(std::size_t n, std::span<const std::size_t> subset) {
    if (subset.empty()) fail(ErrorCode::invalid_argument, "calibration subset is empty");
    std::vector<bool> seen(n, false);
    for (std::size_t i : subset) {
        if (i >= n) fail(ErrorCode::invalid_argument, "subset index " + std::to_string(i) + " out of range");
        if (seen[i]) fail(ErrorCode::invalid_argument, "subset index " + std::to_string(i) + " repeated");
        seen[i] = true;
    }
}

Calibration solve_coupling(const FitnessVector& y, std::span<const std::size_t> subset, double target) {
    const std::size_t n = y.size();
    if (n < 2) fail(ErrorCode::invalid_argument, "calibration needs at least two nodes");
    if (!std::isfinite(target) || target < 0.0)
        fail(ErrorCode::invalid_argument, "observed degree sum must be finite and nonnegative");
    if (target == 0.0) fail(ErrorCode::degenerate, "degenerate: z=0 boundary (observed degree sum is zero)");
    const double saturation = static_cast<double>(subset.size()) * static_cast<double>(n - 1);
    if (target >= saturation) {
        std::ostringstream msg;
        msg << "infeasible degree sum: " << target << " reaches the saturation limit " << saturation;
        fail(ErrorCode::infeasible, msg.str());
    }

    Calibration c;
    c.target = target;
    c.tolerance = std::max(1e-9 * target, 1e-12);
    auto excess = [&](double log_z) {
        ++c.evaluations;
        return subset_expected_degree_sum(y, subset, std::exp(log_z)) - target;
    };

    constexpr double step = std::numbers::ln10;
    constexpr int max_steps = 700;
    double lo = 0.0;
    double hi = 0.0;
    double f0 = excess(0.0);
    if (f0 == 0.0) {
        c.z = 1.0;
        return c;
    }
    int steps = 0;
    if (f0 < 0.0) {
        while (excess(hi + step) < 0.0) {
            hi += step;
            if (++steps > max_steps) fail(ErrorCode::internal, "could not bracket the calibration root from above");
        }
        lo = hi;
        hi += step;
    } else {
        while (excess(lo - step) > 0.0) {
            lo -= step;
            if (++steps > max_steps) fail(ErrorCode::internal, "could not bracket the calibration root from below");
        }
        hi = lo;
        lo -= step;
    }

    // Bisect to relative width 1e-12 in z, then keep going while the residual
    // bound is unmet and the interval can still be split.
    double f_lo = excess(lo);
    double f_hi = excess(hi);
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        const bool narrow = std::expm1(hi - lo) <= 1e-12;
        const double best_residual = std::min(std::abs(f_lo), std::abs(f_hi));
        if ((narrow && best_residual <= c.tolerance) || mid <= lo || mid >= hi) break;
        const double f_mid = excess(mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            f_lo = f_hi = 0.0;
            break;
        }
        if (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    const bool take_lo = std::abs(f_lo) <= std::abs(f_hi);
    c.z = std::exp(take_lo ? lo : hi);
    c.residual = take_lo ? std::abs(f_lo) : std::abs(f_hi);
    if (c.residual > c.tolerance) {
        std::ostringstream msg;
        msg << "calibration residual " << c.residual << " exceeds tolerance " << c.tolerance;
        fail(ErrorCode::not_converged, msg.str());
    }
    return c;
}

} // namespace

Calibration calibrate_z(const FitnessVector& y, std::span<const std::size_t> subset,
                        std::span<const double> observed_degrees) {
    validate_subset(y.size(), subset);
    if (observed_degrees.size() != subset.size())
        fail(ErrorCode::invalid_argument, "observed degree count does not match subset size");
    double target = 0.0;
    for (double k : observed_degrees) {
        if (!std::isfinite(k) || k < 0.0 || k > static_cast<double>(y.size() - 1))
            fail(ErrorCode::invalid_argument, "observed degrees must lie in [0, N-1]");
        target += k;
    }
    return solve_coupling(y, subset, target);
}

Calibration calibrate_to_density(const FitnessVector& y, double density) {
    if (!(density > 0.0 && density < 1.0))
        fail(ErrorCode::invalid_argument, "target density must lie strictly between 0 and 1");
    const std::size_t n = y.size();
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return solve_coupling(y, all, density * static_cast<double>(n) * static_cast<double>(n - 1));
}

ProbabilityMatrix ConfigurationModelFit::probability_matrix() const {
    const std::size_t n = x.size();
    std::vector<double> p(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double q = x[i] * x[j];
            p[i * n + j] = p[j * n + i] = q / (1.0 + q);
        }
    return ProbabilityMatrix::from_values(n, std::move(p));
}

namespace {

double cm_residual(std::span<const double> k, std::span<const double> x) {
    const std::size_t n = k.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double q = x[i] * x[j];
            s += q / (1.0 + q);
        }
        worst = std::max(worst, std::abs(s - k[i]));
    }
    return worst;
}

} // namespace

ConfigurationModelFit fit_configuration_model(std::span<const double> degrees,
                                              const ConfigurationModelOptions& options) {
    const std::size_t n = degrees.size();
    if (n < 2) fail(ErrorCode::invalid_argument, "configuration model needs at least two nodes");
    if (!(options.tolerance > 0.0)) fail(ErrorCode::invalid_argument, "tolerance must be positive");
    const double cap = static_cast<double>(n - 1);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = degrees[i];
        if (!std::isfinite(k) || k < 0.0 || k > cap)
            fail(ErrorCode::invalid_argument, "degree of node " + std::to_string(i) + " outside [0, N-1]");
        total += k;
    }
    if (total == 0.0) fail(ErrorCode::degenerate, "degree sequence is all zero");
    // zero-degree nodes drop out, so saturation is relative to the active nodes
    const auto active = static_cast<double>(std::count_if(degrees.begin(), degrees.end(), [](double k) { return k > 0.0; }));
    for (std::size_t i = 0; i < n; ++i)
        if (degrees[i] >= active - 1.0)
            fail(ErrorCode::infeasible, "node " + std::to_string(i) +
                                            " is saturated (links to every other active node); its multiplier diverges");

    ConfigurationModelFit fit;
    fit.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) fit.x[i] = degrees[i] / std::sqrt(total);

    double damping = 1.0;
    double previous = cm_residual(degrees, fit.x);
    fit.residual = previous;
    std::vector<double> snapshot;
    while (fit.residual > options.tolerance) {
        if (fit.iterations >= options.max_iterations) {
            std::ostringstream msg;
            msg << "configuration model fit did not converge: residual " << fit.residual << " after "
                << fit.iterations << " iterations";
            fail(ErrorCode::not_converged, msg.str());
        }
        snapshot = fit.x;
        for (std::size_t i = 0; i < n; ++i) {
            if (degrees[i] == 0.0) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                s += fit.x[j] / (1.0 + fit.x[i] * fit.x[j]);
            }
            const double proposal = degrees[i] / s;
            fit.x[i] = damping == 1.0 ? proposal
                                      : std::exp((1.0 - damping) * std::log(fit.x[i]) + damping * std::log(proposal));
        }
        ++fit.iterations;
        const double r = cm_residual(degrees, fit.x);
        if (r > previous && damping > 1.0 / 64.0) {
            // overshoot: roll back and retry the sweep with a shorter step
            fit.x = snapshot;
            damping *= 0.5;
            continue;
        }
        previous = r;
        fit.residual = r;
    }
    return fit;
}

} // namespace fitrec
