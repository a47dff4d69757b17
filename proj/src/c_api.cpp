#include "fitrec.h"

#include <cmath>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "fitrec/bench.hpp"
#include "fitrec/bootstrap.hpp"
#include "fitrec/ensemble.hpp"
#include "fitrec/error.hpp"
#include "fitrec/graph.hpp"
#include "fitrec/io.hpp"
#include "fitrec/metrics.hpp"

#ifndef FITREC_VERSION
#define FITREC_VERSION "0.0.0"
#endif

struct fr_buffer {
    std::string text;
};
struct fr_weighted {
    fitrec::WeightedDigraph value;
};
struct fr_graph {
    fitrec::Graph value;
};
struct fr_fitness {
    fitrec::FitnessVector value;
};
struct fr_observation {
    fitrec::PartialObservation value;
};
struct fr_cm_fit {
    fitrec::ConfigurationModelFit value;
    std::vector<double> degrees;
    std::vector<std::string> labels;
};
struct fr_estimates {
    std::vector<fitrec::ReconstructionEstimate> value;
};
struct fr_bench {
    fitrec::BenchmarkResult value;
};

namespace {

thread_local std::string last_error;

fr_status to_status(fitrec::ErrorCode code) {
    using fitrec::ErrorCode;
    switch (code) {
    case ErrorCode::invalid_argument: return FR_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return FR_ERR_PARSE;
    case ErrorCode::io: return FR_ERR_IO;
    case ErrorCode::degenerate: return FR_ERR_DEGENERATE;
    case ErrorCode::infeasible: return FR_ERR_INFEASIBLE;
    case ErrorCode::not_converged: return FR_ERR_NOT_CONVERGED;
    case ErrorCode::internal: return FR_ERR_INTERNAL;
    }
    return FR_ERR_INTERNAL;
}

fr_status set_error(fr_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

/// Run `body`, translating exceptions into status codes.
template <typename Body>
fr_status guarded(Body&& body) noexcept {
    try {
        body();
        return FR_OK;
    } catch (const fitrec::Error& e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(FR_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(FR_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(FR_ERR_INTERNAL, "unknown error");
    }
}

void require(bool condition, const char* what) {
    if (!condition) fitrec::fail(fitrec::ErrorCode::invalid_argument, what);
}

fitrec::io::Format to_format(fr_format f) {
    if (f == FR_FORMAT_CSV) return fitrec::io::Format::csv;
    if (f == FR_FORMAT_JSON) return fitrec::io::Format::json;
    fitrec::fail(fitrec::ErrorCode::invalid_argument, "unknown output format");
}

void emit(std::string text, fr_buffer** out) { *out = new fr_buffer{std::move(text)}; }

std::vector<fitrec::Property> properties_from_mask(unsigned mask) {
    require(mask != 0 && (mask & ~static_cast<unsigned>(FR_PROP_ALL)) == 0, "invalid property mask");
    std::vector<fitrec::Property> out;
    for (auto p : fitrec::all_properties)
        if (mask & (1u << static_cast<unsigned>(p))) out.push_back(p);
    return out;
}

fitrec::Property property_from_bit(unsigned bit) {
    for (auto p : fitrec::all_properties)
        if (bit == (1u << static_cast<unsigned>(p))) return p;
    fitrec::fail(fitrec::ErrorCode::invalid_argument, "expected a single property bit");
}

fr_metrics to_c(const fitrec::MetricsReport& r) {
    fr_metrics m{};
    m.density = r.density;
    m.knn = r.knn;
    m.clustering = r.clustering;
    m.rich_club_defined = r.rich_club.has_value() ? 1 : 0;
    m.rich_club = r.rich_club.value_or(0.0);
    return m;
}

template <typename Values>
void copy_out(const Values& values, double* out, std::size_t length) {
    require(out != nullptr, "output pointer is null");
    require(length >= values.size(), "output buffer too small");
    std::copy(values.begin(), values.end(), out);
}

fitrec::BenchmarkConfig to_config(const fr_bench_options* o) {
    require(o != nullptr, "options pointer is null");
    require(o->n_values != nullptr || o->n_count == 0, "n_values pointer is null");
    fitrec::BenchmarkConfig cfg;
    cfg.n_values.assign(o->n_values, o->n_values + o->n_count);
    cfg.subsets = o->subsets;
    cfg.samples = o->samples;
    cfg.seed = o->seed;
    cfg.monte_carlo = o->monte_carlo != 0;
    cfg.properties = properties_from_mask(o->properties);
    cfg.boundary = o->boundary == FR_BOUNDARY_LIMIT ? fitrec::BoundaryPolicy::limit : fitrec::BoundaryPolicy::resample;
    cfg.threads = o->threads == 0 ? 1 : o->threads;
    return cfg;
}

} // namespace

extern "C" {

const char* fr_version(void) { return FITREC_VERSION; }
const char* fr_last_error(void) { return last_error.c_str(); }

const char* fr_status_name(fr_status status) {
    switch (status) {
    case FR_OK: return "ok";
    case FR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case FR_ERR_PARSE: return "parse_error";
    case FR_ERR_IO: return "io_error";
    case FR_ERR_DEGENERATE: return "degenerate";
    case FR_ERR_INFEASIBLE: return "infeasible";
    case FR_ERR_NOT_CONVERGED: return "not_converged";
    case FR_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* fr_buffer_data(const fr_buffer* b) { return b ? b->text.c_str() : nullptr; }
size_t fr_buffer_size(const fr_buffer* b) { return b ? b->text.size() : 0; }
void fr_buffer_free(fr_buffer* b) { delete b; }

// weighted

fr_status fr_weighted_read_edge_list(const char* path, fr_weighted** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new fr_weighted{fitrec::io::read_edge_list(path)};
    });
}

fr_status fr_weighted_parse_edge_list(const char* text, size_t length, fr_weighted** out) {
    return guarded([&] {
        require((text || length == 0) && out, "null argument");
        *out = new fr_weighted{fitrec::io::parse_edge_list(std::string_view(text ? text : "", length))};
    });
}

fr_status fr_weighted_from_dense(size_t n, const double* weights, fr_weighted** out) {
    return guarded([&] {
        require(weights && out, "null argument");
        *out = new fr_weighted{fitrec::WeightedDigraph::from_dense(n, std::vector<double>(weights, weights + n * n))};
    });
}

size_t fr_weighted_node_count(const fr_weighted* g) { return g ? g->value.node_count() : 0; }

fr_status fr_weighted_binarize(const fr_weighted* g, fr_graph** out) {
    return guarded([&] {
        require(g && out, "null argument");
        *out = new fr_graph{fitrec::binarize(g->value)};
    });
}

fr_status fr_weighted_strengths(const fr_weighted* g, fr_strength_mode mode, fr_fitness** out) {
    return guarded([&] {
        require(g && out, "null argument");
        const auto m = mode == FR_STRENGTH_TOTAL ? fitrec::StrengthMode::total : fitrec::StrengthMode::out;
        *out = new fr_fitness{fitrec::strengths(g->value, m)};
    });
}

void fr_weighted_free(fr_weighted* g) { delete g; }

// graph

fr_status fr_graph_from_adjacency(size_t n, const uint8_t* adjacency, fr_graph** out) {
    return guarded([&] {
        require((adjacency || n == 0) && out, "null argument");
        std::vector<std::uint8_t> adj(adjacency, adjacency + n * n);
        *out = new fr_graph{fitrec::Graph::from_adjacency(n, std::move(adj))};
    });
}

size_t fr_graph_node_count(const fr_graph* g) { return g ? g->value.node_count() : 0; }
size_t fr_graph_edge_count(const fr_graph* g) { return g ? g->value.edge_count() : 0; }

fr_status fr_graph_degrees(const fr_graph* g, size_t* out, size_t length) {
    return guarded([&] {
        require(g && out, "null argument");
        const auto k = g->value.degrees();
        require(length >= k.size(), "output buffer too small");
        std::copy(k.begin(), k.end(), out);
    });
}

const char* fr_graph_label(const fr_graph* g, size_t i) {
    if (!g || i >= g->value.node_count()) return nullptr;
    return g->value.labels()[i].c_str();
}

fr_status fr_graph_write_edge_list(const fr_graph* g, fr_buffer** out) {
    return guarded([&] {
        require(g && out, "null argument");
        emit(fitrec::io::write_edge_list(g->value), out);
    });
}

void fr_graph_free(fr_graph* g) { delete g; }

// metrics

fr_status fr_metrics_exact(const fr_graph* g, fr_metrics* out) {
    return guarded([&] {
        require(g && out, "null argument");
        *out = to_c(fitrec::exact_metrics(g->value));
    });
}

fr_status fr_metrics_expected(size_t n, const double* p, fr_metrics* out) {
    return guarded([&] {
        require(p && out, "null argument");
        const auto m = fitrec::ProbabilityMatrix::from_values(n, std::vector<double>(p, p + n * n));
        *out = to_c(fitrec::expected_metrics(m));
    });
}

fr_status fr_metrics_write(const fr_graph* g, fr_format format, fr_buffer** out) {
    return guarded([&] {
        require(g && out, "null argument");
        const auto f = to_format(format);
        emit(fitrec::io::write_metrics(fitrec::exact_metrics(g->value), g->value.labels(), f), out);
    });
}

// fitness

fr_status fr_fitness_read(const char* path, fr_fitness** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new fr_fitness{fitrec::io::read_fitness(path)};
    });
}

fr_status fr_fitness_from_values(size_t n, const double* values, fr_fitness** out) {
    return guarded([&] {
        require(values && out, "null argument");
        *out = new fr_fitness{fitrec::FitnessVector(std::vector<double>(values, values + n))};
    });
}

fr_status fr_fitness_generate(const char* spec, uint64_t seed, fr_fitness** out) {
    return guarded([&] {
        require(spec && out, "null argument");
        *out = new fr_fitness{fitrec::io::generate_fitness(spec, seed)};
    });
}

fr_status fr_fitness_align(const fr_fitness* f, const fr_graph* g, fr_fitness** out) {
    return guarded([&] {
        require(f && g && out, "null argument");
        *out = new fr_fitness{fitrec::io::align_fitness(f->value, g->value.labels())};
    });
}

size_t fr_fitness_size(const fr_fitness* f) { return f ? f->value.size() : 0; }

fr_status fr_fitness_values(const fr_fitness* f, double* out, size_t length) {
    return guarded([&] {
        require(f != nullptr, "null argument");
        copy_out(f->value.values(), out, length);
    });
}

const char* fr_fitness_label(const fr_fitness* f, size_t i) {
    if (!f || i >= f->value.size()) return nullptr;
    return f->value.labels()[i].c_str();
}

void fr_fitness_free(fr_fitness* f) { delete f; }

// observations

fr_status fr_observation_read(const char* path, const fr_fitness* f, fr_observation** out) {
    return guarded([&] {
        require(path && f && out, "null argument");
        *out = new fr_observation{fitrec::io::read_observed(path, f->value)};
    });
}

fr_status fr_observation_create(size_t node_count, size_t count, const size_t* subset, const double* degrees,
                                fr_observation** out) {
    return guarded([&] {
        require(((subset && degrees) || count == 0) && out, "null argument");
        *out = new fr_observation{fitrec::PartialObservation(
            node_count, std::vector<std::size_t>(subset, subset + count), std::vector<double>(degrees, degrees + count))};
    });
}

size_t fr_observation_size(const fr_observation* obs) { return obs ? obs->value.size() : 0; }
void fr_observation_free(fr_observation* obs) { delete obs; }

// ensemble

fr_status fr_link_probability(const fr_fitness* f, double z, size_t i, size_t j, double* out) {
    return guarded([&] {
        require(f && out, "null argument");
        *out = fitrec::FitnessEnsemble(f->value, z).link_probability(i, j);
    });
}

fr_status fr_probability_matrix(const fr_fitness* f, double z, double* out, size_t length) {
    return guarded([&] {
        require(f != nullptr, "null argument");
        copy_out(fitrec::FitnessEnsemble(f->value, z).probability_matrix().values(), out, length);
    });
}

fr_status fr_expected_degrees(const fr_fitness* f, double z, double* out, size_t length) {
    return guarded([&] {
        require(f != nullptr, "null argument");
        copy_out(fitrec::FitnessEnsemble(f->value, z).expected_degrees(), out, length);
    });
}

fr_status fr_calibrate(const fr_fitness* f, const fr_observation* obs, fr_calibration* out) {
    return guarded([&] {
        require(f && obs && out, "null argument");
        require(obs->value.node_count() == f->value.size(), "observation and fitness differ in node count");
        const auto c = fitrec::calibrate_z(f->value, obs->value.subset(), obs->value.degrees());
        *out = fr_calibration{c.z, c.target, c.residual, c.tolerance};
    });
}

fr_status fr_calibration_write(const fr_calibration* c, fr_format format, fr_buffer** out) {
    return guarded([&] {
        require(c && out, "null argument");
        fitrec::Calibration cal;
        cal.z = c->z;
        cal.target = c->target;
        cal.residual = c->residual;
        cal.tolerance = c->tolerance;
        emit(fitrec::io::write_calibration(cal, to_format(format)), out);
    });
}

fr_status fr_sample(const fr_fitness* f, double z, uint64_t seed, fr_graph** out) {
    return guarded([&] {
        require(f && out, "null argument");
        *out = new fr_graph{fitrec::FitnessEnsemble(f->value, z).sample(seed)};
    });
}

// configuration model

fr_status fr_cm_fit_graph(const fr_graph* g, double tolerance, size_t max_iterations, fr_cm_fit** out) {
    return guarded([&] {
        require(g && out, "null argument");
        std::vector<double> k;
        for (auto d : g->value.degrees()) k.push_back(static_cast<double>(d));
        fitrec::ConfigurationModelOptions opt;
        if (tolerance > 0.0) opt.tolerance = tolerance;
        if (max_iterations > 0) opt.max_iterations = max_iterations;
        auto fit = fitrec::fit_configuration_model(k, opt);
        *out = new fr_cm_fit{std::move(fit), std::move(k), g->value.labels()};
    });
}

size_t fr_cm_fit_size(const fr_cm_fit* fit) { return fit ? fit->value.x.size() : 0; }

fr_status fr_cm_fit_multipliers(const fr_cm_fit* fit, double* out, size_t length) {
    return guarded([&] {
        require(fit != nullptr, "null argument");
        copy_out(fit->value.x, out, length);
    });
}

double fr_cm_fit_residual(const fr_cm_fit* fit) { return fit ? fit->value.residual : NAN; }
size_t fr_cm_fit_iterations(const fr_cm_fit* fit) { return fit ? fit->value.iterations : 0; }

fr_status fr_cm_fit_write(const fr_cm_fit* fit, fr_format format, fr_buffer** out) {
    return guarded([&] {
        require(fit && out, "null argument");
        emit(fitrec::io::write_cm_fit(fit->value, fit->degrees, fit->labels, to_format(format)), out);
    });
}

fr_status fr_cm_fit_write_scatter(const fr_cm_fit* fit, const fr_fitness* f, fr_buffer** out) {
    return guarded([&] {
        require(fit && f && out, "null argument");
        emit(fitrec::io::write_scatter(f->value, fit->value), out);
    });
}

void fr_cm_fit_free(fr_cm_fit* fit) { delete fit; }

// reconstruction

void fr_reconstruct_options_init(fr_reconstruct_options* o) {
    if (!o) return;
    o->mode = FR_MODE_ANALYTIC;
    o->samples = 1000;
    o->seed = 0;
    o->threads = 1;
    o->properties = FR_PROP_ALL;
}

fr_status fr_reconstruct(const fr_fitness* f, const fr_observation* obs, const fr_reconstruct_options* options,
                         fr_estimates** out) {
    return guarded([&] {
        require(f && obs && options && out, "null argument");
        fitrec::ReconstructionOptions opt;
        opt.mode = options->mode == FR_MODE_MONTE_CARLO ? fitrec::EstimationMode::monte_carlo
                                                        : fitrec::EstimationMode::analytic;
        opt.samples = options->samples;
        opt.seed = options->seed;
        opt.threads = options->threads == 0 ? 1 : options->threads;
        const auto props = properties_from_mask(options->properties);
        *out = new fr_estimates{fitrec::reconstruct(f->value, obs->value, props, opt)};
    });
}

size_t fr_estimates_size(const fr_estimates* e) { return e ? e->value.size() : 0; }

fr_status fr_estimates_get(const fr_estimates* e, size_t index, fr_estimate* out) {
    return guarded([&] {
        require(e && out, "null argument");
        require(index < e->value.size(), "estimate index out of range");
        const auto& est = e->value[index];
        out->property = 1u << static_cast<unsigned>(est.property);
        out->mean = est.mean;
        out->std_defined = est.std.has_value() ? 1 : 0;
        out->std = est.std.value_or(0.0);
        out->method = est.method == fitrec::EstimationMode::analytic ? FR_MODE_ANALYTIC : FR_MODE_MONTE_CARLO;
        out->samples = est.samples;
        out->z = est.z;
    });
}

fr_status fr_estimates_write(const fr_estimates* e, fr_format format, fr_buffer** out) {
    return guarded([&] {
        require(e && out, "null argument");
        emit(fitrec::io::write_estimates(e->value, to_format(format)), out);
    });
}

void fr_estimates_free(fr_estimates* e) { delete e; }

// benchmark

void fr_bench_options_init(fr_bench_options* o) {
    if (!o) return;
    o->n_values = nullptr;
    o->n_count = 0;
    o->subsets = 100;
    o->samples = 1000;
    o->seed = 0;
    o->monte_carlo = 0;
    o->properties = FR_PROP_ALL;
    o->boundary = FR_BOUNDARY_RESAMPLE;
    o->threads = 1;
}

fr_status fr_bench_synthetic(const fr_fitness* f, double target_density, const fr_bench_options* options,
                             fr_bench** out) {
    return guarded([&] {
        require(f && out, "null argument");
        *out = new fr_bench{fitrec::run_synthetic_benchmark(f->value, target_density, to_config(options))};
    });
}

fr_status fr_bench_real(const fr_graph* g0, const fr_fitness* f, const fr_bench_options* options, fr_bench** out) {
    return guarded([&] {
        require(g0 && f && out, "null argument");
        *out = new fr_bench{fitrec::run_real_benchmark(g0->value, f->value, to_config(options))};
    });
}

fr_status fr_bench_rrmse(const fr_bench* b, unsigned property, size_t n, const char* flavor, double* out) {
    return guarded([&] {
        require(b && flavor && out, "null argument");
        const std::string fl(flavor);
        std::optional<fitrec::Flavor> which;
        for (auto candidate : {fitrec::Flavor::single_realization, fitrec::Flavor::ensemble, fitrec::Flavor::real})
            if (fitrec::to_string(candidate) == fl) which = candidate;
        require(which.has_value(), "unknown flavor");
        const auto prop = property_from_bit(property);
        for (const auto& c : b->value.cells) {
            if (c.property == prop && c.n == n && c.flavor == *which) {
                if (!c.rrmse) fitrec::fail(fitrec::ErrorCode::degenerate, "rRMSE cell was skipped");
                *out = *c.rrmse;
                return;
            }
        }
        fitrec::fail(fitrec::ErrorCode::invalid_argument, "no such benchmark cell");
    });
}

size_t fr_bench_notice_count(const fr_bench* b) { return b ? b->value.notices.size() : 0; }

const char* fr_bench_notice(const fr_bench* b, size_t i) {
    if (!b || i >= b->value.notices.size()) return nullptr;
    return b->value.notices[i].c_str();
}

fr_status fr_bench_write(const fr_bench* b, fr_format format, fr_buffer** out) {
    return guarded([&] {
        require(b && out, "null argument");
        emit(fitrec::io::write_benchmark(b->value, to_format(format)), out);
    });
}

fr_status fr_bench_ground_truth(const fr_bench* b, fr_graph** out) {
    return guarded([&] {
        require(b && out, "null argument");
        require(b->value.g0.has_value(), "benchmark has no sampled ground truth (real run)");
        *out = new fr_graph{*b->value.g0};
    });
}

void fr_bench_free(fr_bench* b) { delete b; }

} // extern "C"
