#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fitrec/bench.hpp"
#include "fitrec/bootstrap.hpp"
#include "fitrec/ensemble.hpp"
#include "fitrec/graph.hpp"
#include "fitrec/metrics.hpp"

namespace fitrec::io {

enum class Format { csv, json };

std::string read_file(const std::string& path);

// Ingestion. All parsers expect UTF-8 text with a fixed header line; errors
// carry the 1-based line number.

/// `src,dst,weight`. Labels map to indices in order of first appearance;
/// repeated (src,dst) rows are summed; a row with src == dst declares a node
/// and contributes no weight.
WeightedDigraph parse_edge_list(std::string_view text);
WeightedDigraph read_edge_list(const std::string& path);

/// `node,fitness`, values strictly positive.
FitnessVector parse_fitness(std::string_view text);
FitnessVector read_fitness(const std::string& path);

/// Reorder `fitness` onto `labels`; the two label sets must coincide.
FitnessVector align_fitness(const FitnessVector& fitness, const std::vector<std::string>& labels);

/// `node,degree` for the observed subset; nodes resolved against the fitness
/// labels.
PartialObservation parse_observed(std::string_view text, const FitnessVector& fitness);
PartialObservation read_observed(const std::string& path, const FitnessVector& fitness);

/// `lognormal:mu,sigma,N` or `powerlaw:gamma,xmin,N`.
FitnessVector generate_fitness(std::string_view spec, std::uint64_t seed);

// Serialization. Reals are printed in shortest round-trip form.

std::string format_real(double value);

/// Edge list that re-ingests to the same graph: one `a,a,0` declaration row
/// per node in index order, then `a,b,1` for every edge with a < b.
std::string write_edge_list(const Graph& g);

std::string write_metrics(const MetricsReport& report, const std::vector<std::string>& labels, Format format);
std::string write_calibration(const Calibration& c, Format format);
std::string write_estimates(std::span<const ReconstructionEstimate> estimates, Format format);
std::string write_cm_fit(const ConfigurationModelFit& fit, std::span<const double> degrees,
                         const std::vector<std::string>& labels, Format format);
/// Two-column `fitness,x` scatter.
std::string write_scatter(const FitnessVector& y, const ConfigurationModelFit& fit);
/// Long-form CSV (`property,n,flavor,rrmse,M,seed`) or a JSON document with
/// the configuration, references and raw per-subset estimates.
std::string write_benchmark(const BenchmarkResult& result, Format format);

} // namespace fitrec::io
