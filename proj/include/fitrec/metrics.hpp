#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fitrec/graph.hpp"

namespace fitrec {

/// Symmetric matrix of independent link probabilities with zero diagonal.
/// Entries lie in [0, 1]; the closed upper end admits 0/1 matrices that
/// reproduce a concrete graph.
class ProbabilityMatrix {
public:
    static ProbabilityMatrix from_values(std::size_t n, std::vector<double> p);
    static ProbabilityMatrix from_graph(const Graph& g);

    std::size_t node_count() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return p_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {p_.data() + i * n_, n_}; }
    std::span<const double> values() const noexcept { return p_; }

    /// <k_i> = sum_j p_ij
    std::vector<double> expected_degrees() const;

private:
    ProbabilityMatrix() = default;

    std::size_t n_ = 0;
    std::vector<double> p_;
};

enum class Property : std::uint8_t { density, knn, clustering, rich_club };

inline constexpr std::array<Property, 4> all_properties{Property::density, Property::knn,
                                                        Property::clustering, Property::rich_club};

std::string_view to_string(Property p) noexcept;
std::optional<Property> parse_property(std::string_view name) noexcept;

struct MetricsReport {
    double density = 0.0;
    double knn = 0.0;
    double clustering = 0.0;
    std::optional<double> rich_club;  ///< empty when the density is 1
    std::vector<double> knn_per_node;
    std::vector<double> clustering_per_node;

    std::optional<double> get(Property p) const;
};

// Exact metrics on a binary graph.

/// 2L / (N(N-1)); N >= 2.
double density(const Graph& g);
/// Mean over all nodes of the neighbors' mean degree; isolated nodes count as 0.
double avg_nn_degree(const Graph& g);
/// Mean local clustering; nodes with degree < 2 count as 0. N >= 3.
double mean_clustering(const Graph& g);
/// Degree-distribution average of the normalized rich-club coefficient.
/// Throws ErrorCode::degenerate when D = 1.
double rich_club(const Graph& g);

MetricsReport exact_metrics(const Graph& g);

/// Plug-in ensemble metrics: every a_ij replaced by p_ij and every degree by
/// its expectation. N >= 3.
MetricsReport expected_metrics(const ProbabilityMatrix& p);

/// One Bernoulli(p_ij) draw per unordered pair, pairs visited in (i, j>i)
/// order.
Graph sample_graph(const ProbabilityMatrix& p, std::uint64_t seed, std::vector<std::string> labels = {});

struct SampleSummary {
    double mean = 0.0;
    double std = 0.0;        ///< sample standard deviation (n - 1)
    std::size_t valid = 0;   ///< samples on which the property was defined
};

struct MonteCarloMetrics {
    std::size_t samples = 0;
    std::array<std::optional<SampleSummary>, 4> summary;  ///< indexed by Property

    const std::optional<SampleSummary>& get(Property p) const {
        return summary[static_cast<std::size_t>(p)];
    }
};

/// Sample `samples` graphs from `p`; sample s uses seed derived from
/// seed ^ s. Output is independent of `threads`.
MonteCarloMetrics monte_carlo_metrics(const ProbabilityMatrix& p, std::size_t samples,
                                      std::uint64_t seed, std::size_t threads = 1);

} // namespace fitrec
