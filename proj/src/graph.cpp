#include "fitrec/graph.hpp"

#include <cmath>

#include "fitrec/error.hpp"

namespace fitrec {

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

namespace {

std::vector<std::string> checked_labels(std::size_t n, std::vector<std::string> labels) {
    if (labels.empty()) return default_labels(n);
    if (labels.size() != n)
        fail(ErrorCode::invalid_argument, "label count " + std::to_string(labels.size()) +
                                              " does not match node count " + std::to_string(n));
    return labels;
}

} // namespace

WeightedDigraph WeightedDigraph::from_dense(std::size_t n, std::vector<double> weights,
                                            std::vector<std::string> labels) {
    if (n == 0) fail(ErrorCode::invalid_argument, "weighted digraph needs at least one node");
    if (weights.size() != n * n)
        fail(ErrorCode::invalid_argument, "weight matrix must have N*N entries");
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const double w = weights[k];
        if (!std::isfinite(w) || w < 0.0)
            fail(ErrorCode::invalid_argument, "weight (" + std::to_string(k / n) + "," +
                                                  std::to_string(k % n) + ") is negative or not finite");
    }
    WeightedDigraph g;
    g.n_ = n;
    g.w_ = std::move(weights);
    g.labels_ = checked_labels(n, std::move(labels));
    return g;
}

Graph Graph::from_adjacency(std::size_t n, std::vector<std::uint8_t> adjacency,
                            std::vector<std::string> labels) {
    if (adjacency.size() != n * n) fail(ErrorCode::invalid_argument, "adjacency must have N*N entries");
    for (std::size_t i = 0; i < n; ++i) {
        if (adjacency[i * n + i] != 0) fail(ErrorCode::invalid_argument, "adjacency has a self-loop");
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto a = adjacency[i * n + j];
            if (a > 1) fail(ErrorCode::invalid_argument, "adjacency entries must be 0 or 1");
            if (a != adjacency[j * n + i]) fail(ErrorCode::invalid_argument, "adjacency is not symmetric");
        }
    }
    Graph g;
    g.n_ = n;
    g.adj_ = std::move(adjacency);
    g.labels_ = checked_labels(n, std::move(labels));
    g.finalize();
    return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                        std::vector<std::string> labels) {
    std::vector<std::uint8_t> adj(n * n, 0);
    for (auto [i, j] : edges) {
        if (i >= n || j >= n) fail(ErrorCode::invalid_argument, "edge endpoint out of range");
        if (i == j) fail(ErrorCode::invalid_argument, "self-loops are not allowed");
        adj[i * n + j] = adj[j * n + i] = 1;
    }
    Graph g;
    g.n_ = n;
    g.adj_ = std::move(adj);
    g.labels_ = checked_labels(n, std::move(labels));
    g.finalize();
    return g;
}

Graph Graph::empty(std::size_t n) { return from_adjacency(n, std::vector<std::uint8_t>(n * n, 0)); }

Graph Graph::complete(std::size_t n) {
    std::vector<std::uint8_t> adj(n * n, 1);
    for (std::size_t i = 0; i < n; ++i) adj[i * n + i] = 0;
    return from_adjacency(n, std::move(adj));
}

void Graph::finalize() {
    degrees_.assign(n_, 0);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < n_; ++j) k += adj_[i * n_ + j];
        degrees_[i] = k;
        total += k;
    }
    edges_ = total / 2;
}

std::vector<std::size_t> Graph::neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    out.reserve(degrees_[i]);
    for (std::size_t j = 0; j < n_; ++j)
        if (adj_[i * n_ + j]) out.push_back(j);
    return out;
}

FitnessVector::FitnessVector(std::vector<double> values, std::vector<std::string> labels)
    : y_(std::move(values)) {
    if (y_.empty()) fail(ErrorCode::invalid_argument, "fitness vector is empty");
    for (std::size_t i = 0; i < y_.size(); ++i) {
        if (!std::isfinite(y_[i]) || y_[i] <= 0.0)
            fail(ErrorCode::invalid_argument,
                 "fitness of node " + (labels.size() == y_.size() ? labels[i] : std::to_string(i)) +
                     " must be positive and finite");
    }
    labels_ = checked_labels(y_.size(), std::move(labels));
}

FitnessVector FitnessVector::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
        fail(ErrorCode::invalid_argument, "fitness scale factor must be positive");
    std::vector<double> v(y_);
    for (auto& x : v) x *= factor;
    return FitnessVector(std::move(v), labels_);
}

Graph binarize(const WeightedDigraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint8_t> adj(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.weight(i, j) + g.weight(j, i) > 0.0) adj[i * n + j] = adj[j * n + i] = 1;
    return Graph::from_adjacency(n, std::move(adj), g.labels());
}

FitnessVector strengths(const WeightedDigraph& g, StrengthMode mode) {
    const std::size_t n = g.node_count();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s[i] += g.weight(i, j);
            if (mode == StrengthMode::total) s[i] += g.weight(j, i);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s[i] > 0.0))
            fail(ErrorCode::invalid_argument,
                 "node '" + g.labels()[i] + "' has zero strength; prune zero-strength nodes before reconstruction");
    }
    return FitnessVector(std::move(s), g.labels());
}

std::vector<std::size_t> degrees(const Graph& g) {
    return {g.degrees().begin(), g.degrees().end()};
}

} // namespace fitrec
