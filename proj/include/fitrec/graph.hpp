#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fitrec {

/// Raw directed weighted input (trade volumes, loans). Dense N x N storage;
/// diagonal entries are kept as given but read back as zero.
class WeightedDigraph {
public:
    /// `weights` is row-major N x N. Labels default to "0".."N-1".
    static WeightedDigraph from_dense(std::size_t n, std::vector<double> weights,
                                      std::vector<std::string> labels = {});

    std::size_t node_count() const noexcept { return n_; }
    double weight(std::size_t i, std::size_t j) const noexcept {
        return i == j ? 0.0 : w_[i * n_ + j];
    }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    WeightedDigraph() = default;

    std::size_t n_ = 0;
    std::vector<double> w_;
    std::vector<std::string> labels_;
};

/// Binary undirected simple graph, dense adjacency with cached degrees.
class Graph {
public:
    /// Row-major N x N 0/1 matrix; must be symmetric with zero diagonal.
    static Graph from_adjacency(std::size_t n, std::vector<std::uint8_t> adjacency,
                                std::vector<std::string> labels = {});
    /// Undirected edge list over nodes [0, n); duplicates collapse, loops rejected.
    static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                            std::vector<std::string> labels = {});
    static Graph empty(std::size_t n);
    static Graph complete(std::size_t n);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_; }
    bool has_edge(std::size_t i, std::size_t j) const noexcept { return adj_[i * n_ + j] != 0; }
    std::span<const std::uint8_t> row(std::size_t i) const noexcept { return {adj_.data() + i * n_, n_}; }
    std::span<const std::size_t> degrees() const noexcept { return degrees_; }
    std::size_t degree(std::size_t i) const noexcept { return degrees_[i]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Neighbors of `i` in increasing index order.
    std::vector<std::size_t> neighbors(std::size_t i) const;

    friend bool operator==(const Graph& a, const Graph& b) noexcept {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    Graph() = default;
    void finalize();

    std::size_t n_ = 0;
    std::size_t edges_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::size_t> degrees_;
    std::vector<std::string> labels_;
};

/// Strictly positive per-node fitness values, optionally labelled.
class FitnessVector {
public:
    explicit FitnessVector(std::vector<double> values, std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return y_.size(); }
    double operator[](std::size_t i) const noexcept { return y_[i]; }
    std::span<const double> values() const noexcept { return y_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Same labels, values multiplied by `factor` (> 0).
    FitnessVector scaled(double factor) const;

private:
    std::vector<double> y_;
    std::vector<std::string> labels_;
};

enum class StrengthMode {
    out,    ///< row sum, s_i = sum_j w_ij
    total,  ///< row plus column sum
};

/// a_ij = 1 iff i != j and w_ij + w_ji > 0.
Graph binarize(const WeightedDigraph& g);

/// Node strengths as fitness. Throws if any node has zero strength.
FitnessVector strengths(const WeightedDigraph& g, StrengthMode mode = StrengthMode::out);

/// k_i = sum_{j != i} a_ij.
std::vector<std::size_t> degrees(const Graph& g);

std::vector<std::string> default_labels(std::size_t n);

} // namespace fitrec
