#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fitrec/graph.hpp"
#include "fitrec/metrics.hpp"
#include "oracles.hpp"

namespace testutil {

inline fitrec::Graph to_graph(const oracle::Matrix& a) {
    const std::size_t n = a.size();
    std::vector<std::uint8_t> adj(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) adj[i * n + j] = a[i][j] != 0.0 ? 1 : 0;
    return fitrec::Graph::from_adjacency(n, std::move(adj));
}

inline oracle::Matrix to_matrix(const fitrec::ProbabilityMatrix& p) {
    const std::size_t n = p.node_count();
    oracle::Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = p(i, j);
    return m;
}

inline fitrec::Graph path3() {
    const std::vector<std::pair<std::size_t, std::size_t>> e{{0, 1}, {1, 2}};
    return fitrec::Graph::from_edges(3, e);
}

/// Hub 0 joined to leaves 1..3.
inline fitrec::Graph star4() {
    const std::vector<std::pair<std::size_t, std::size_t>> e{{0, 1}, {0, 2}, {0, 3}};
    return fitrec::Graph::from_edges(4, e);
}

inline fitrec::Graph cycle(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return fitrec::Graph::from_edges(n, e);
}

} // namespace testutil
