#include "fitrec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "fitrec/error.hpp"

namespace fitrec::io {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

struct Row {
    std::size_t line = 0;
    std::vector<std::string_view> fields;
};

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    fail(ErrorCode::parse, "line " + std::to_string(line) + ": " + what);
}

/// Split into comma-separated rows, check the header, skip blank lines.
std::vector<Row> split_csv(std::string_view text, std::string_view header) {
    std::vector<Row> rows;
    std::size_t line = 0;
    bool saw_header = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (!saw_header) {
            if (raw != header) parse_error(line, "expected header '" + std::string(header) + "'");
            saw_header = true;
            continue;
        }
        if (raw.empty()) continue;
        Row row{line, {}};
        std::size_t start = 0;
        for (;;) {
            auto comma = raw.find(',', start);
            if (comma == std::string_view::npos) {
                row.fields.push_back(raw.substr(start));
                break;
            }
            row.fields.push_back(raw.substr(start, comma - start));
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    if (!saw_header) parse_error(1, "empty file");
    return rows;
}

double parse_decimal(std::string_view field, std::size_t line, std::string_view what) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(value))
        parse_error(line, "malformed " + std::string(what) + " '" + std::string(field) + "'");
    return value;
}

void expect_fields(const Row& row, std::size_t count) {
    if (row.fields.size() != count)
        parse_error(row.line, "expected " + std::to_string(count) + " fields, found " +
                                  std::to_string(row.fields.size()));
    for (auto f : row.fields)
        if (f.empty()) parse_error(row.line, "empty field");
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

} // namespace

WeightedDigraph parse_edge_list(std::string_view text) {
    const auto rows = split_csv(text, "src,dst,weight");
    if (rows.empty()) parse_error(2, "edge list has no rows");

    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
    auto intern = [&](std::string_view label) {
        auto [it, inserted] = index.try_emplace(std::string(label), labels.size());
        if (inserted) labels.emplace_back(label);
        return it->second;
    };
    std::map<std::pair<std::size_t, std::size_t>, double> weights;
    for (const auto& row : rows) {
        expect_fields(row, 3);
        const double w = parse_decimal(row.fields[2], row.line, "weight");
        if (w < 0.0) parse_error(row.line, "negative weight");
        const auto i = intern(row.fields[0]);
        const auto j = intern(row.fields[1]);
        if (i != j) weights[{i, j}] += w;
    }
    const std::size_t n = labels.size();
    std::vector<double> dense(n * n, 0.0);
    for (const auto& [ij, w] : weights) dense[ij.first * n + ij.second] = w;
    return WeightedDigraph::from_dense(n, std::move(dense), std::move(labels));
}

WeightedDigraph read_edge_list(const std::string& path) {
    try {
        return parse_edge_list(read_file(path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::io) throw;
        fail(e.code(), path + ": " + e.what());
    }
}

FitnessVector parse_fitness(std::string_view text) {
    const auto rows = split_csv(text, "node,fitness");
    if (rows.empty()) parse_error(2, "fitness file has no rows");
    std::vector<std::string> labels;
    std::vector<double> values;
    std::set<std::string, std::less<>> seen;
    for (const auto& row : rows) {
        expect_fields(row, 2);
        if (!seen.emplace(row.fields[0]).second)
            parse_error(row.line, "duplicate node '" + std::string(row.fields[0]) + "'");
        const double y = parse_decimal(row.fields[1], row.line, "fitness");
        if (!(y > 0.0)) parse_error(row.line, "fitness must be positive");
        labels.emplace_back(row.fields[0]);
        values.push_back(y);
    }
    return FitnessVector(std::move(values), std::move(labels));
}

FitnessVector read_fitness(const std::string& path) {
    try {
        return parse_fitness(read_file(path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::io) throw;
        fail(e.code(), path + ": " + e.what());
    }
}

FitnessVector align_fitness(const FitnessVector& fitness, const std::vector<std::string>& labels) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < fitness.size(); ++i) index.emplace(fitness.labels()[i], i);
    std::set<std::string> wanted(labels.begin(), labels.end());

    std::vector<std::string> missing;
    for (const auto& l : labels)
        if (!index.contains(l)) missing.push_back(l);
    std::vector<std::string> extra;
    for (const auto& l : fitness.labels())
        if (!wanted.contains(l)) extra.push_back(l);
    if (!missing.empty() || !extra.empty()) {
        std::string msg = "fitness nodes do not match the graph nodes;";
        if (!missing.empty()) msg += " missing fitness for: " + join(missing) + ";";
        if (!extra.empty()) msg += " not in graph: " + join(extra) + ";";
        fail(ErrorCode::invalid_argument, msg);
    }
    std::vector<double> values;
    values.reserve(labels.size());
    for (const auto& l : labels) values.push_back(fitness[index.at(l)]);
    return FitnessVector(std::move(values), labels);
}

PartialObservation parse_observed(std::string_view text, const FitnessVector& fitness) {
    const auto rows = split_csv(text, "node,degree");
    if (rows.empty()) parse_error(2, "observed-degree file has no rows");
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < fitness.size(); ++i) index.emplace(fitness.labels()[i], i);

    std::vector<std::size_t> subset;
    std::vector<double> degrees;
    std::vector<bool> seen(fitness.size(), false);
    const double cap = static_cast<double>(fitness.size() - 1);
    for (const auto& row : rows) {
        expect_fields(row, 2);
        auto it = index.find(row.fields[0]);
        if (it == index.end()) parse_error(row.line, "unknown node '" + std::string(row.fields[0]) + "'");
        if (seen[it->second]) parse_error(row.line, "duplicate node '" + std::string(row.fields[0]) + "'");
        seen[it->second] = true;
        const double k = parse_decimal(row.fields[1], row.line, "degree");
        if (k < 0.0 || k > cap) parse_error(row.line, "degree outside [0, N-1]");
        subset.push_back(it->second);
        degrees.push_back(k);
    }
    return PartialObservation(fitness.size(), std::move(subset), std::move(degrees));
}

PartialObservation read_observed(const std::string& path, const FitnessVector& fitness) {
    try {
        return parse_observed(read_file(path), fitness);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::io) throw;
        fail(e.code(), path + ": " + e.what());
    }
}

FitnessVector generate_fitness(std::string_view spec, std::uint64_t seed) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        fail(ErrorCode::invalid_argument, "fitness generator must look like 'lognormal:mu,sigma,N' or 'powerlaw:gamma,xmin,N'");
    const auto kind = spec.substr(0, colon);
    std::vector<std::string_view> args;
    auto rest = spec.substr(colon + 1);
    for (;;) {
        auto comma = rest.find(',');
        args.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (args.size() != 3) fail(ErrorCode::invalid_argument, "fitness generator takes exactly three parameters");
    auto number = [&](std::string_view f) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (f.empty() || ec != std::errc() || ptr != f.data() + f.size())
            fail(ErrorCode::invalid_argument, "bad generator parameter '" + std::string(f) + "'");
        return v;
    };
    const double count = number(args[2]);
    if (!(count >= 1.0) || count != std::floor(count))
        fail(ErrorCode::invalid_argument, "generator node count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    if (kind == "lognormal") return lognormal_fitness(n, number(args[0]), number(args[1]), seed);
    if (kind == "powerlaw") return powerlaw_fitness(n, number(args[0]), number(args[1]), seed);
    fail(ErrorCode::invalid_argument, "unknown fitness generator '" + std::string(kind) + "'");
}

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

namespace {

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : "NA"; }

ordered_json json_real(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string write_edge_list(const Graph& g) {
    std::string out = "src,dst,weight\n";
    const auto& labels = g.labels();
    for (std::size_t i = 0; i < g.node_count(); ++i) out += labels[i] + "," + labels[i] + ",0\n";
    for (std::size_t i = 0; i < g.node_count(); ++i)
        for (std::size_t j = i + 1; j < g.node_count(); ++j)
            if (g.has_edge(i, j)) out += labels[i] + "," + labels[j] + ",1\n";
    return out;
}

std::string write_metrics(const MetricsReport& report, const std::vector<std::string>& labels, Format format) {
    if (format == Format::csv) {
        std::string out = "property,value\n";
        for (auto p : all_properties) out += std::string(to_string(p)) + "," + optional_real(report.get(p)) + "\n";
        return out;
    }
    ordered_json j;
    for (auto p : all_properties) j[std::string(to_string(p))] = json_real(report.get(p));
    ordered_json nodes = ordered_json::array();
    for (std::size_t i = 0; i < report.knn_per_node.size(); ++i) {
        nodes.push_back({{"node", i < labels.size() ? labels[i] : std::to_string(i)},
                         {"knn", report.knn_per_node[i]},
                         {"clustering", report.clustering_per_node[i]}});
    }
    j["per_node"] = std::move(nodes);
    return dump(j);
}

std::string write_calibration(const Calibration& c, Format format) {
    if (format == Format::csv) {
        return "z,residual,target,tolerance\n" + format_real(c.z) + "," + format_real(c.residual) + "," +
               format_real(c.target) + "," + format_real(c.tolerance) + "\n";
    }
    ordered_json j{{"z", c.z}, {"residual", c.residual}, {"target", c.target}, {"tolerance", c.tolerance}};
    return dump(j);
}

std::string write_estimates(std::span<const ReconstructionEstimate> estimates, Format format) {
    if (format == Format::csv) {
        std::string out = "property,mean,std,method,samples,z\n";
        for (const auto& e : estimates) {
            out += std::string(to_string(e.property)) + "," + format_real(e.mean) + "," + optional_real(e.std) + "," +
                   std::string(to_string(e.method)) + "," + std::to_string(e.samples) + "," + format_real(e.z) + "\n";
        }
        return out;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& e : estimates) {
        arr.push_back({{"property", to_string(e.property)},
                       {"mean", e.mean},
                       {"std", json_real(e.std)},
                       {"method", to_string(e.method)},
                       {"samples", e.samples},
                       {"z", e.z}});
    }
    return dump(ordered_json{{"estimates", std::move(arr)}});
}

std::string write_cm_fit(const ConfigurationModelFit& fit, std::span<const double> degrees,
                         const std::vector<std::string>& labels, Format format) {
    if (format == Format::csv) {
        std::string out = "node,degree,x\n";
        for (std::size_t i = 0; i < fit.x.size(); ++i)
            out += labels[i] + "," + format_real(degrees[i]) + "," + format_real(fit.x[i]) + "\n";
        return out;
    }
    ordered_json nodes = ordered_json::array();
    for (std::size_t i = 0; i < fit.x.size(); ++i)
        nodes.push_back({{"node", labels[i]}, {"degree", degrees[i]}, {"x", fit.x[i]}});
    ordered_json j{{"residual", fit.residual}, {"iterations", fit.iterations}, {"nodes", std::move(nodes)}};
    return dump(j);
}

std::string write_scatter(const FitnessVector& y, const ConfigurationModelFit& fit) {
    if (y.size() != fit.x.size()) fail(ErrorCode::invalid_argument, "scatter: fitness and fit differ in length");
    std::string out = "fitness,x\n";
    for (std::size_t i = 0; i < y.size(); ++i) out += format_real(y[i]) + "," + format_real(fit.x[i]) + "\n";
    return out;
}

std::string write_benchmark(const BenchmarkResult& r, Format format) {
    const auto& cfg = r.config;
    if (format == Format::csv) {
        std::string out = "property,n,flavor,rrmse,M,seed\n";
        for (const auto& c : r.cells) {
            out += std::string(to_string(c.property)) + "," + std::to_string(c.n) + "," +
                   std::string(to_string(c.flavor)) + "," + optional_real(c.rrmse) + "," +
                   std::to_string(cfg.subsets) + "," + std::to_string(cfg.seed) + "\n";
        }
        return out;
    }

    ordered_json props = ordered_json::array();
    for (auto p : cfg.properties) props.push_back(to_string(p));
    ordered_json config{{"mode", r.synthetic ? "synthetic" : "real"},
                        {"n_values", cfg.n_values},
                        {"subsets", cfg.subsets},
                        {"estimator", cfg.monte_carlo ? "monte-carlo" : "analytic-plugin"},
                        {"samples", cfg.monte_carlo ? cfg.samples : 0},
                        {"seed", cfg.seed},
                        {"boundary", cfg.boundary == BoundaryPolicy::resample ? "resample" : "limit"},
                        {"properties", std::move(props)}};
    if (r.target_density) config["target_density"] = *r.target_density;

    auto refs = [&](const std::array<std::optional<double>, 4>& a) {
        ordered_json j;
        for (auto p : all_properties) j[std::string(to_string(p))] = json_real(a[static_cast<std::size_t>(p)]);
        return j;
    };

    ordered_json j;
    j["config"] = std::move(config);
    j["node_count"] = r.node_count;
    if (r.z_generating) j["z_generating"] = *r.z_generating;
    if (r.z_reference) j["z_reference"] = *r.z_reference;
    if (r.g0) j["g0_edges"] = r.g0->edge_count();
    j["reference_observed"] = refs(r.reference_observed);
    if (r.synthetic) j["reference_ensemble"] = refs(r.reference_ensemble);

    ordered_json sizes = ordered_json::array();
    for (const auto& s : r.sizes) {
        ordered_json zs = ordered_json::array();
        for (double z : s.z) zs.push_back(json_real(z));
        ordered_json est;
        for (auto p : cfg.properties) {
            ordered_json arr = ordered_json::array();
            for (const auto& e : s.estimates[static_cast<std::size_t>(p)]) arr.push_back(json_real(e));
            est[std::string(to_string(p))] = std::move(arr);
        }
        sizes.push_back({{"n", s.n},
                         {"failures", s.failures},
                         {"boundary_hits", s.boundary_hits},
                         {"z", std::move(zs)},
                         {"estimates", std::move(est)}});
    }
    j["subsets"] = std::move(sizes);

    ordered_json cells = ordered_json::array();
    for (const auto& c : r.cells) {
        cells.push_back({{"property", to_string(c.property)},
                         {"n", c.n},
                         {"flavor", to_string(c.flavor)},
                         {"rrmse", json_real(c.rrmse)}});
    }
    j["rrmse"] = std::move(cells);
    j["notices"] = r.notices;
    return dump(j);
}

} // namespace fitrec::io
