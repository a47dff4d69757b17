/*
 * fitrec: network reconstruction from node fitness and partial degrees.
 *
 * C interface to the library. All objects are opaque handles created by a
 * `*_create`/`*_read`/`*_parse` call and released with the matching `*_free`
 * (freeing NULL is a no-op). Every fallible call returns an fr_status; on
 * failure fr_last_error() describes the problem. The message is thread-local
 * and stays valid until the next failing call on the same thread.
 *
 * Node indices are zero-based. Matrices are dense, row-major, N*N.
 */
#ifndef FITREC_H
#define FITREC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FITREC_BUILDING)
#    define FITREC_API __declspec(dllexport)
#  else
#    define FITREC_API __declspec(dllimport)
#  endif
#else
#  define FITREC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fr_status {
    FR_OK = 0,
    FR_ERR_INVALID_ARGUMENT = 1,
    FR_ERR_PARSE = 2,
    FR_ERR_IO = 3,
    FR_ERR_DEGENERATE = 4,    /* z = 0 boundary, or metric undefined (D = 1) */
    FR_ERR_INFEASIBLE = 5,    /* degree sum at saturation, diverging multiplier */
    FR_ERR_NOT_CONVERGED = 6,
    FR_ERR_INTERNAL = 7
} fr_status;

typedef enum fr_format { FR_FORMAT_CSV = 0, FR_FORMAT_JSON = 1 } fr_format;
typedef enum fr_strength_mode { FR_STRENGTH_OUT = 0, FR_STRENGTH_TOTAL = 1 } fr_strength_mode;
typedef enum fr_mode { FR_MODE_ANALYTIC = 0, FR_MODE_MONTE_CARLO = 1 } fr_mode;
typedef enum fr_boundary { FR_BOUNDARY_RESAMPLE = 0, FR_BOUNDARY_LIMIT = 1 } fr_boundary;

/* Property selection bitmask. */
enum {
    FR_PROP_DENSITY = 1u << 0,
    FR_PROP_KNN = 1u << 1,
    FR_PROP_CLUSTERING = 1u << 2,
    FR_PROP_RICH_CLUB = 1u << 3,
    FR_PROP_ALL = 0xFu
};

typedef struct fr_buffer fr_buffer;
typedef struct fr_weighted fr_weighted;
typedef struct fr_graph fr_graph;
typedef struct fr_fitness fr_fitness;
typedef struct fr_observation fr_observation;
typedef struct fr_cm_fit fr_cm_fit;
typedef struct fr_estimates fr_estimates;
typedef struct fr_bench fr_bench;

FITREC_API const char* fr_version(void);
FITREC_API const char* fr_last_error(void);
FITREC_API const char* fr_status_name(fr_status status);

/* ---- text buffers returned by serializers ---- */
FITREC_API const char* fr_buffer_data(const fr_buffer* buffer);
FITREC_API size_t fr_buffer_size(const fr_buffer* buffer);
FITREC_API void fr_buffer_free(fr_buffer* buffer);

/* ---- weighted directed input ---- */
FITREC_API fr_status fr_weighted_read_edge_list(const char* path, fr_weighted** out);
FITREC_API fr_status fr_weighted_parse_edge_list(const char* text, size_t length, fr_weighted** out);
FITREC_API fr_status fr_weighted_from_dense(size_t n, const double* weights, fr_weighted** out);
FITREC_API size_t fr_weighted_node_count(const fr_weighted* g);
FITREC_API fr_status fr_weighted_binarize(const fr_weighted* g, fr_graph** out);
FITREC_API fr_status fr_weighted_strengths(const fr_weighted* g, fr_strength_mode mode, fr_fitness** out);
FITREC_API void fr_weighted_free(fr_weighted* g);

/* ---- binary undirected graphs ---- */
FITREC_API fr_status fr_graph_from_adjacency(size_t n, const uint8_t* adjacency, fr_graph** out);
FITREC_API size_t fr_graph_node_count(const fr_graph* g);
FITREC_API size_t fr_graph_edge_count(const fr_graph* g);
FITREC_API fr_status fr_graph_degrees(const fr_graph* g, size_t* out, size_t length);
/* Label of node i, or NULL when out of range. Owned by the graph. */
FITREC_API const char* fr_graph_label(const fr_graph* g, size_t i);
FITREC_API fr_status fr_graph_write_edge_list(const fr_graph* g, fr_buffer** out);
FITREC_API void fr_graph_free(fr_graph* g);

/* ---- topological metrics ---- */
typedef struct fr_metrics {
    double density;
    double knn;
    double clustering;
    double rich_club;       /* valid only when rich_club_defined != 0 */
    int rich_club_defined;  /* 0 when the density equals 1 */
} fr_metrics;

FITREC_API fr_status fr_metrics_exact(const fr_graph* g, fr_metrics* out);
/* Plug-in expectation on a symmetric probability matrix. */
FITREC_API fr_status fr_metrics_expected(size_t n, const double* p, fr_metrics* out);
FITREC_API fr_status fr_metrics_write(const fr_graph* g, fr_format format, fr_buffer** out);

/* ---- fitness ---- */
FITREC_API fr_status fr_fitness_read(const char* path, fr_fitness** out);
FITREC_API fr_status fr_fitness_from_values(size_t n, const double* values, fr_fitness** out);
/* "lognormal:mu,sigma,N" or "powerlaw:gamma,xmin,N". */
FITREC_API fr_status fr_fitness_generate(const char* spec, uint64_t seed, fr_fitness** out);
/* Reorder onto the graph's node labels; the label sets must match exactly. */
FITREC_API fr_status fr_fitness_align(const fr_fitness* f, const fr_graph* g, fr_fitness** out);
FITREC_API size_t fr_fitness_size(const fr_fitness* f);
FITREC_API fr_status fr_fitness_values(const fr_fitness* f, double* out, size_t length);
FITREC_API const char* fr_fitness_label(const fr_fitness* f, size_t i);
FITREC_API void fr_fitness_free(fr_fitness* f);

/* ---- partial degree observations ---- */
FITREC_API fr_status fr_observation_read(const char* path, const fr_fitness* f, fr_observation** out);
FITREC_API fr_status fr_observation_create(size_t node_count, size_t count, const size_t* subset,
                                           const double* degrees, fr_observation** out);
FITREC_API size_t fr_observation_size(const fr_observation* obs);
FITREC_API void fr_observation_free(fr_observation* obs);

/* ---- fitness ensemble ---- */
typedef struct fr_calibration {
    double z;
    double target;
    double residual;
    double tolerance;
} fr_calibration;

FITREC_API fr_status fr_link_probability(const fr_fitness* f, double z, size_t i, size_t j, double* out);
/* Writes N*N entries into `out`. */
FITREC_API fr_status fr_probability_matrix(const fr_fitness* f, double z, double* out, size_t length);
FITREC_API fr_status fr_expected_degrees(const fr_fitness* f, double z, double* out, size_t length);
FITREC_API fr_status fr_calibrate(const fr_fitness* f, const fr_observation* obs, fr_calibration* out);
FITREC_API fr_status fr_calibration_write(const fr_calibration* c, fr_format format, fr_buffer** out);
/* Sampled graph carries the fitness labels. */
FITREC_API fr_status fr_sample(const fr_fitness* f, double z, uint64_t seed, fr_graph** out);

/* ---- configuration model ---- */
FITREC_API fr_status fr_cm_fit_graph(const fr_graph* g, double tolerance, size_t max_iterations, fr_cm_fit** out);
FITREC_API size_t fr_cm_fit_size(const fr_cm_fit* fit);
FITREC_API fr_status fr_cm_fit_multipliers(const fr_cm_fit* fit, double* out, size_t length);
FITREC_API double fr_cm_fit_residual(const fr_cm_fit* fit);
FITREC_API size_t fr_cm_fit_iterations(const fr_cm_fit* fit);
FITREC_API fr_status fr_cm_fit_write(const fr_cm_fit* fit, fr_format format, fr_buffer** out);
/* Two-column fitness,x CSV; `f` must be aligned with the fitted graph. */
FITREC_API fr_status fr_cm_fit_write_scatter(const fr_cm_fit* fit, const fr_fitness* f, fr_buffer** out);
FITREC_API void fr_cm_fit_free(fr_cm_fit* fit);

/* ---- reconstruction ---- */
typedef struct fr_reconstruct_options {
    fr_mode mode;
    size_t samples;   /* Monte Carlo draws (mode == FR_MODE_MONTE_CARLO) */
    uint64_t seed;
    size_t threads;
    unsigned properties;  /* FR_PROP_* mask */
} fr_reconstruct_options;

typedef struct fr_estimate {
    unsigned property;  /* single FR_PROP_* bit */
    double mean;
    double std;
    int std_defined;
    fr_mode method;
    size_t samples;
    double z;
} fr_estimate;

FITREC_API void fr_reconstruct_options_init(fr_reconstruct_options* options);
FITREC_API fr_status fr_reconstruct(const fr_fitness* f, const fr_observation* obs,
                                    const fr_reconstruct_options* options, fr_estimates** out);
FITREC_API size_t fr_estimates_size(const fr_estimates* e);
FITREC_API fr_status fr_estimates_get(const fr_estimates* e, size_t index, fr_estimate* out);
FITREC_API fr_status fr_estimates_write(const fr_estimates* e, fr_format format, fr_buffer** out);
FITREC_API void fr_estimates_free(fr_estimates* e);

/* ---- benchmark ---- */
typedef struct fr_bench_options {
    const size_t* n_values;
    size_t n_count;
    size_t subsets;       /* M */
    size_t samples;       /* Monte Carlo draws when monte_carlo != 0 */
    uint64_t seed;
    int monte_carlo;
    unsigned properties;  /* FR_PROP_* mask */
    fr_boundary boundary;
    size_t threads;
} fr_bench_options;

FITREC_API void fr_bench_options_init(fr_bench_options* options);
FITREC_API fr_status fr_bench_synthetic(const fr_fitness* f, double target_density, const fr_bench_options* options,
                                        fr_bench** out);
/* `f` must be aligned with `g0`. */
FITREC_API fr_status fr_bench_real(const fr_graph* g0, const fr_fitness* f, const fr_bench_options* options,
                                   fr_bench** out);
/* flavor: "r0", "rOmega0" or "rR". Returns FR_ERR_DEGENERATE when the cell was skipped. */
FITREC_API fr_status fr_bench_rrmse(const fr_bench* b, unsigned property, size_t n, const char* flavor, double* out);
FITREC_API size_t fr_bench_notice_count(const fr_bench* b);
FITREC_API const char* fr_bench_notice(const fr_bench* b, size_t i);
FITREC_API fr_status fr_bench_write(const fr_bench* b, fr_format format, fr_buffer** out);
/* Synthetic runs only: the sampled ground-truth graph. */
FITREC_API fr_status fr_bench_ground_truth(const fr_bench* b, fr_graph** out);
FITREC_API void fr_bench_free(fr_bench* b);

#ifdef __cplusplus
}
#endif

#endif /* FITREC_H */
