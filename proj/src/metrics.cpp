#include "fitrec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fitrec/error.hpp"
#include "fitrec/parallel.hpp"
#include "fitrec/random.hpp"

namespace fitrec {

std::string_view to_string(Property p) noexcept {
    switch (p) {
    case Property::density: return "density";
    case Property::knn: return "knn";
    case Property::clustering: return "clustering";
    case Property::rich_club: return "rich_club";
    }
    return "unknown";
}

std::optional<Property> parse_property(std::string_view name) noexcept {
    for (auto p : all_properties)
        if (to_string(p) == name) return p;
    return std::nullopt;
}

std::optional<double> MetricsReport::get(Property p) const {
    switch (p) {
    case Property::density: return density;
    case Property::knn: return knn;
    case Property::clustering: return clustering;
    case Property::rich_club: return rich_club;
    }
    return std::nullopt;
}

ProbabilityMatrix ProbabilityMatrix::from_values(std::size_t n, std::vector<double> p) {
    if (p.size() != n * n) fail(ErrorCode::invalid_argument, "probability matrix must have N*N entries");
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i * n + i] != 0.0) fail(ErrorCode::invalid_argument, "probability matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = p[i * n + j];
            if (!(v >= 0.0 && v <= 1.0))
                fail(ErrorCode::invalid_argument, "probability matrix entries must lie in [0, 1]");
            if (v != p[j * n + i]) fail(ErrorCode::invalid_argument, "probability matrix is not symmetric");
        }
    }
    ProbabilityMatrix m;
    m.n_ = n;
    m.p_ = std::move(p);
    return m;
}

ProbabilityMatrix ProbabilityMatrix::from_graph(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> p(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p[i * n + j] = g.has_edge(i, j) ? 1.0 : 0.0;
    ProbabilityMatrix m;
    m.n_ = n;
    m.p_ = std::move(p);
    return m;
}

std::vector<double> ProbabilityMatrix::expected_degrees() const {
    std::vector<double> k(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (double v : row(i)) s += v;
        k[i] = s;
    }
    return k;
}

namespace {

void require_nodes(std::size_t n, std::size_t minimum, const char* what) {
    if (n < minimum)
        fail(ErrorCode::invalid_argument,
             std::string(what) + " requires at least " + std::to_string(minimum) + " nodes");
}

double density_from_pair_sum(double pair_sum, std::size_t n) {
    return 2.0 * pair_sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

/// Shared rich-club evaluation. Thresholds are the distinct values of
/// `degree` (exact floating equality groups ties); for each one the set of
/// strictly larger-degree nodes is grown incrementally so every unordered
/// pair weight is added once.
template <typename PairWeight>
double rich_club_kernel(std::span<const double> degree, double d, PairWeight&& weight) {
    const std::size_t n = degree.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });

    std::vector<std::size_t> club;
    club.reserve(n);
    double internal = 0.0;
    double total = 0.0;
    std::size_t pos = 0;
    while (pos < n) {
        const double value = degree[order[pos]];
        std::size_t end = pos;
        while (end < n && degree[order[end]] == value) ++end;

        const auto members = static_cast<double>(club.size());
        const double psi = club.size() >= 2 ? 2.0 * internal / (members * (members - 1.0)) : 0.0;
        const double phi = (psi - d) / (1.0 - d);
        total += static_cast<double>(end - pos) / static_cast<double>(n) * phi;

        for (std::size_t q = pos; q < end; ++q) {
            const std::size_t u = order[q];
            for (std::size_t v : club) internal += weight(u, v);
            club.push_back(u);
        }
        pos = end;
    }
    return total;
}

std::vector<double> knn_per_node(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (g.degree(i) == 0) continue;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (g.has_edge(i, j)) s += static_cast<double>(g.degree(j));
        out[i] = s / static_cast<double>(g.degree(i));
    }
    return out;
}

std::vector<double> clustering_per_node(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = g.degree(i);
        if (k < 2) continue;
        const auto nb = g.neighbors(i);
        std::size_t closed = 0;
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) closed += g.has_edge(nb[a], nb[b]);
        // ordered-pair form: 2T / (k^2 - k)
        const auto kd = static_cast<double>(k);
        out[i] = 2.0 * static_cast<double>(closed) / (kd * kd - kd);
    }
    return out;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::optional<double> rich_club_or_empty(const Graph& g, double d) {
    if (d >= 1.0) return std::nullopt;
    std::vector<double> deg(g.node_count());
    for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = static_cast<double>(g.degree(i));
    return rich_club_kernel(deg, d, [&](std::size_t u, std::size_t v) { return g.has_edge(u, v) ? 1.0 : 0.0; });
}

} // namespace

double density(const Graph& g) {
    require_nodes(g.node_count(), 2, "density");
    return density_from_pair_sum(static_cast<double>(g.edge_count()), g.node_count());
}

double avg_nn_degree(const Graph& g) {
    require_nodes(g.node_count(), 2, "average nearest-neighbor degree");
    return mean_of(knn_per_node(g));
}

double mean_clustering(const Graph& g) {
    require_nodes(g.node_count(), 3, "clustering");
    return mean_of(clustering_per_node(g));
}

double rich_club(const Graph& g) {
    const double d = density(g);
    auto phi = rich_club_or_empty(g, d);
    if (!phi) fail(ErrorCode::degenerate, "rich-club undefined at D=1");
    return *phi;
}

MetricsReport exact_metrics(const Graph& g) {
    require_nodes(g.node_count(), 3, "metrics report");
    MetricsReport r;
    r.density = density(g);
    r.knn_per_node = knn_per_node(g);
    r.knn = mean_of(r.knn_per_node);
    r.clustering_per_node = clustering_per_node(g);
    r.clustering = mean_of(r.clustering_per_node);
    r.rich_club = rich_club_or_empty(g, r.density);
    return r;
}

MetricsReport expected_metrics(const ProbabilityMatrix& p) {
    const std::size_t n = p.node_count();
    require_nodes(n, 3, "expected metrics");
    const auto k = p.expected_degrees();

    double pair_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pair_sum += p(i, j);

    MetricsReport r;
    r.density = density_from_pair_sum(pair_sum, n);

    r.knn_per_node.assign(n, 0.0);
    r.clustering_per_node.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto pi = p.row(i);
        if (k[i] > 0.0) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += pi[j] * k[j];
            r.knn_per_node[i] = s / k[i];
        }

        double squares = 0.0;
        for (double v : pi) squares += v * v;
        const double wedges = k[i] * k[i] - squares;
        if (wedges > 0.0) {
            double closed = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (pi[j] == 0.0) continue;
                const auto pj = p.row(j);
                double dot = 0.0;
                for (std::size_t l = 0; l < n; ++l) dot += pi[l] * pj[l];
                closed += pi[j] * dot;
            }
            r.clustering_per_node[i] = closed / wedges;
        }
    }
    r.knn = mean_of(r.knn_per_node);
    r.clustering = mean_of(r.clustering_per_node);
    if (r.density < 1.0) r.rich_club = rich_club_kernel(k, r.density, [&](std::size_t u, std::size_t v) { return p(u, v); });
    return r;
}

Graph sample_graph(const ProbabilityMatrix& p, std::uint64_t seed, std::vector<std::string> labels) {
    const std::size_t n = p.node_count();
    Rng rng(seed);
    std::vector<std::uint8_t> adj(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.uniform() < p(i, j)) adj[i * n + j] = adj[j * n + i] = 1;
        }
    }
    return Graph::from_adjacency(n, std::move(adj), std::move(labels));
}

MonteCarloMetrics monte_carlo_metrics(const ProbabilityMatrix& p, std::size_t samples, std::uint64_t seed,
                                      std::size_t threads) {
    if (samples < 2) fail(ErrorCode::invalid_argument, "Monte Carlo estimation needs at least 2 samples");
    require_nodes(p.node_count(), 3, "Monte Carlo metrics");

    struct Draw {
        std::array<double, 4> value{};
        bool rich_club_defined = false;
    };
    std::vector<Draw> draws(samples);
    parallel_for(samples, threads, [&](std::size_t s) {
        const auto g = sample_graph(p, seed ^ static_cast<std::uint64_t>(s));
        const auto m = exact_metrics(g);
        draws[s].value = {m.density, m.knn, m.clustering, m.rich_club.value_or(0.0)};
        draws[s].rich_club_defined = m.rich_club.has_value();
    });

    MonteCarloMetrics out;
    out.samples = samples;
    for (std::size_t prop = 0; prop < 4; ++prop) {
        const bool conditional = prop == static_cast<std::size_t>(Property::rich_club);
        double sum = 0.0;
        std::size_t valid = 0;
        for (const auto& d : draws) {
            if (conditional && !d.rich_club_defined) continue;
            sum += d.value[prop];
            ++valid;
        }
        if (valid < 2) continue;
        const double mean = sum / static_cast<double>(valid);
        double ss = 0.0;
        for (const auto& d : draws) {
            if (conditional && !d.rich_club_defined) continue;
            const double dev = d.value[prop] - mean;
            ss += dev * dev;
        }
        out.summary[prop] = SampleSummary{mean, std::sqrt(ss / static_cast<double>(valid - 1)), valid};
    }
    return out;
}

} // namespace fitrec
