// fitrec command-line front end. Talks to the library through the C API only.

#include <CLI11.hpp>
#include <json.hpp>

#include <openssl/evp.h>
#include <unistd.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fitrec.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

template <typename T, void (*Free)(T*)>
struct Freer {
    void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Owned = std::unique_ptr<T, Freer<T, Free>>;

using Weighted = Owned<fr_weighted, fr_weighted_free>;
using Graph = Owned<fr_graph, fr_graph_free>;
using Fitness = Owned<fr_fitness, fr_fitness_free>;
using Observation = Owned<fr_observation, fr_observation_free>;
using CmFit = Owned<fr_cm_fit, fr_cm_fit_free>;
using Estimates = Owned<fr_estimates, fr_estimates_free>;
using Bench = Owned<fr_bench, fr_bench_free>;
using Buffer = Owned<fr_buffer, fr_buffer_free>;

/// Library failure or invalid command line; reported as JSON on stderr.
struct Failure {
    std::string kind;
    std::string message;
    std::vector<std::string> violations;
};

void check(fr_status status) {
    if (status != FR_OK) throw Failure{fr_status_name(status), fr_last_error(), {}};
}

std::string take(fr_buffer* raw) {
    Buffer b(raw);
    return std::string(fr_buffer_data(b.get()), fr_buffer_size(b.get()));
}

// ---- flag validation ------------------------------------------------------

class Violations {
public:
    void add(std::string v) { items_.push_back(std::move(v)); }

    std::optional<std::uint64_t> u64(const std::string& flag, const std::string& text) {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || ec != std::errc() || p != text.data() + text.size()) {
            add(flag + ": expected a nonnegative integer, got '" + text + "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> real(const std::string& flag, const std::string& text) {
        double v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || ec != std::errc() || p != text.data() + text.size() || !std::isfinite(v)) {
            add(flag + ": expected a number, got '" + text + "'");
            return std::nullopt;
        }
        return v;
    }

    void require(bool ok, std::string message) {
        if (!ok) add(std::move(message));
    }

    void raise() const {
        if (!items_.empty()) throw Failure{"usage", "invalid command line", items_};
    }

private:
    std::vector<std::string> items_;
};

// ---- input tracking and output --------------------------------------------

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Failure{"internal", "sha256 failed", {}};
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

struct Run {
    std::string command;
    std::vector<std::string> argv;
    json config = json::object();
    std::uint64_t seed = 0;
    json inputs = json::array();
    std::vector<std::string> labels;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::string started_at;

    void input(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return;  // the library reports the open failure itself
        std::ostringstream ss;
        ss << in.rdbuf();
        const auto bytes = ss.str();
        inputs.push_back({{"path", path}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
    }
};

struct Output {
    std::string path;
    std::string text;
};

void write_atomically(const std::vector<Output>& outputs) {
    std::vector<std::string> temps;
    auto cleanup = [&] {
        std::error_code ec;
        for (const auto& t : temps) fs::remove(t, ec);
    };
    for (const auto& o : outputs) {
        const std::string tmp = o.path + ".tmp." + std::to_string(::getpid());
        temps.push_back(tmp);
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << o.text;
        f.close();
        if (!f) {
            cleanup();
            throw Failure{"io_error", "cannot write '" + o.path + "'", {}};
        }
    }
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        std::error_code ec;
        fs::rename(temps[i], outputs[i].path, ec);
        if (ec) {
            cleanup();
            throw Failure{"io_error", "cannot write '" + outputs[i].path + "': " + ec.message(), {}};
        }
    }
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Primary outputs go to disk with a manifest, or to stdout when --out is absent.
void emit(Run& run, const std::optional<std::string>& out, std::vector<Output> outputs) {
    if (!out) {
        for (const auto& o : outputs) std::cout << o.text;
        std::cout.flush();
        return;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - run.start).count();
    json manifest{{"command", run.command},
                  {"argv", run.argv},
                  {"config", run.config},
                  {"seed", run.seed},
                  {"inputs", run.inputs},
                  {"version", fr_version()},
                  {"started_at", run.started_at},
                  {"duration_seconds", seconds},
                  {"node_labels", run.labels},
                  {"outputs", json::array()}};
    for (const auto& o : outputs) manifest["outputs"].push_back(o.path);
    outputs.push_back({*out + ".manifest.json", manifest.dump(2) + "\n"});
    write_atomically(outputs);
}

std::vector<std::string> graph_labels(const fr_graph* g) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < fr_graph_node_count(g); ++i) out.emplace_back(fr_graph_label(g, i));
    return out;
}

std::vector<std::string> fitness_labels(const fr_fitness* f) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < fr_fitness_size(f); ++i) out.emplace_back(fr_fitness_label(f, i));
    return out;
}

// ---- shared option groups --------------------------------------------------

struct Common {
    std::string seed = "0";
    std::optional<std::string> out;
    std::string format = "csv";
    std::string threads = "1";

    std::uint64_t seed_value = 0;
    fr_format format_value = FR_FORMAT_CSV;
    std::size_t thread_count = 1;

    void attach(CLI::App* app) {
        app->add_option("--seed", seed, "Master seed")->capture_default_str();
        app->add_option("--out", out, "Output file (stdout when omitted); a manifest goes to <out>.manifest.json");
        app->add_option("--format", format, "csv or json")->capture_default_str();
        app->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
    }

    void validate(Violations& v) {
        if (auto s = v.u64("--seed", seed)) seed_value = *s;
        if (format == "csv") format_value = FR_FORMAT_CSV;
        else if (format == "json") format_value = FR_FORMAT_JSON;
        else v.add("--format: expected csv or json, got '" + format + "'");
        if (auto t = v.u64("--threads", threads)) {
            thread_count = *t == 0 ? std::max(1u, std::thread::hardware_concurrency()) : static_cast<std::size_t>(*t);
        }
    }
};

unsigned parse_properties(Violations& v, const std::vector<std::string>& names) {
    if (names.empty()) return FR_PROP_ALL;
    unsigned mask = 0;
    for (const auto& n : names) {
        if (n == "density") mask |= FR_PROP_DENSITY;
        else if (n == "knn") mask |= FR_PROP_KNN;
        else if (n == "clustering") mask |= FR_PROP_CLUSTERING;
        else if (n == "rich_club") mask |= FR_PROP_RICH_CLUB;
        else if (n == "all") mask |= FR_PROP_ALL;
        else v.add("--properties: unknown property '" + n + "' (density, knn, clustering, rich_club)");
    }
    return mask;
}

json property_names(unsigned mask) {
    json out = json::array();
    const char* names[] = {"density", "knn", "clustering", "rich_club"};
    for (unsigned b = 0; b < 4; ++b)
        if (mask & (1u << b)) out.push_back(names[b]);
    return out;
}

/// Subset sizes: integers, fractions of N in (0, 1] (floored, at least 1), or "N".
/// Without `n` only the syntax is checked.
std::vector<std::size_t> resolve_grid(Violations& v, const std::vector<std::string>& items,
                                      std::optional<std::size_t> n) {
    std::vector<std::size_t> out;
    for (const auto& item : items) {
        if (item == "N") {
            if (n) out.push_back(*n);
            continue;
        }
        if (item.find_first_of(".eE") == std::string::npos) {
            if (auto k = v.u64("--n-grid", item); k && n) {
                if (*k < 1 || *k > *n) v.add("--n-grid: " + item + " outside [1, " + std::to_string(*n) + "]");
                else out.push_back(static_cast<std::size_t>(*k));
            }
            continue;
        }
        if (auto f = v.real("--n-grid", item)) {
            if (!(*f > 0.0 && *f <= 1.0)) v.add("--n-grid: fraction " + item + " outside (0, 1]");
            else if (n)
                out.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(*f * *n + 1e-9))));
        }
    }
    return out;
}

// ---- subcommands -----------------------------------------------------------

struct GraphSource {
    std::string graph;
    std::optional<std::string> fitness;
    std::string strength_mode;  // fitness from node strength when set
};

/// Load the weighted graph and, if requested, fitness aligned to its nodes.
std::pair<Weighted, Graph> load_graph(Run& run, const std::string& path) {
    run.input(path);
    fr_weighted* w = nullptr;
    check(fr_weighted_read_edge_list(path.c_str(), &w));
    Weighted weighted(w);
    fr_graph* g = nullptr;
    check(fr_weighted_binarize(weighted.get(), &g));
    return {std::move(weighted), Graph(g)};
}

Fitness fitness_for_graph(Run& run, const fr_weighted* w, const fr_graph* g, const GraphSource& src) {
    if (!src.strength_mode.empty()) {
        fr_fitness* f = nullptr;
        check(fr_weighted_strengths(w, src.strength_mode == "total" ? FR_STRENGTH_TOTAL : FR_STRENGTH_OUT, &f));
        return Fitness(f);
    }
    run.input(*src.fitness);
    fr_fitness* raw = nullptr;
    check(fr_fitness_read(src.fitness->c_str(), &raw));
    Fitness unaligned(raw);
    fr_fitness* aligned = nullptr;
    check(fr_fitness_align(unaligned.get(), g, &aligned));
    return Fitness(aligned);
}

void validate_source(Violations& v, const GraphSource& s, bool fitness_required) {
    v.require(!s.graph.empty(), "--graph is required");
    if (!s.strength_mode.empty())
        v.require(s.strength_mode == "out" || s.strength_mode == "total",
                  "--fitness-from-strength: expected out or total, got '" + s.strength_mode + "'");
    v.require(!(s.fitness && !s.strength_mode.empty()), "--fitness and --fitness-from-strength are exclusive");
    if (fitness_required)
        v.require(s.fitness || !s.strength_mode.empty(), "one of --fitness or --fitness-from-strength is required");
}

} // namespace

int main(int argc, char** argv) {
    Run run;
    run.started_at = utc_now();
    for (int i = 0; i < argc; ++i) run.argv.emplace_back(argv[i]);

    CLI::App app{"Reconstruct network properties from node fitness and partial degree information."};
    app.name("fitrec");
    app.set_version_flag("--version", std::string(fr_version()));
    app.require_subcommand(1);

    // metrics
    Common metrics_common;
    std::string metrics_graph;
    auto* metrics = app.add_subcommand("metrics", "Exact density, knn, clustering and rich-club of a network");
    metrics->add_option("--graph", metrics_graph, "Edge list CSV (src,dst,weight)");
    metrics_common.attach(metrics);

    // cm-fit
    Common cm_common;
    GraphSource cm_src;
    std::string cm_tol = "1e-8", cm_maxit = "100000";
    std::optional<std::string> cm_scatter;
    auto* cm = app.add_subcommand("cm-fit", "Maximum-likelihood configuration-model multipliers");
    cm->add_option("--graph", cm_src.graph, "Edge list CSV");
    cm->add_option("--fitness", cm_src.fitness, "node,fitness CSV; enables the fitness-vs-multiplier scatter");
    cm->add_option("--fitness-from-strength", cm_src.strength_mode, "Use node strength (out|total) as fitness");
    cm->add_option("--tol", cm_tol, "Max absolute degree mismatch")->capture_default_str();
    cm->add_option("--max-iter", cm_maxit, "Sweep limit")->capture_default_str();
    cm->add_option("--scatter", cm_scatter, "Scatter CSV path (default <out>.scatter.csv)");
    cm_common.attach(cm);

    // calibrate
    Common cal_common;
    std::string cal_fitness, cal_observed;
    auto* cal = app.add_subcommand("calibrate", "Solve for the coupling z on an observed subset");
    cal->add_option("--fitness", cal_fitness, "node,fitness CSV");
    cal->add_option("--observed", cal_observed, "node,degree CSV for the observed subset");
    cal_common.attach(cal);

    // reconstruct
    Common rec_common;
    std::string rec_fitness, rec_observed, rec_mode = "analytic", rec_samples = "1000";
    std::vector<std::string> rec_props;
    auto* rec = app.add_subcommand("reconstruct", "Estimate network properties from partial degrees");
    rec->add_option("--fitness", rec_fitness, "node,fitness CSV");
    rec->add_option("--observed", rec_observed, "node,degree CSV for the observed subset");
    rec->add_option("--mode", rec_mode, "analytic or mc")->capture_default_str();
    rec->add_option("--samples", rec_samples, "Monte Carlo samples (mc mode)")->capture_default_str();
    rec->add_option("--properties", rec_props, "Subset of density,knn,clustering,rich_club")->delimiter(',');
    rec_common.attach(rec);

    // sample
    Common smp_common;
    std::string smp_fitness, smp_z, smp_count = "1";
    auto* smp = app.add_subcommand("sample", "Draw graphs from the fitness ensemble");
    smp->add_option("--fitness", smp_fitness, "node,fitness CSV");
    smp->add_option("--z", smp_z, "Coupling z > 0");
    smp->add_option("--count", smp_count, "Number of graphs; files <out-stem>_<i><ext> when > 1")
        ->capture_default_str();
    smp_common.attach(smp);

    // bench
    auto* bench = app.add_subcommand("bench", "Subset-sampling benchmark");
    bench->require_subcommand(1);

    struct BenchFlags {
        Common common;
        std::vector<std::string> grid;
        std::string subsets = "100", samples = "1000", boundary = "resample";
        bool mc = false;
        std::vector<std::string> props;
    };
    auto attach_bench = [](CLI::App* a, BenchFlags& f) {
        a->add_option("--n-grid", f.grid, "Subset sizes: integers, fractions of N, or N")->delimiter(',');
        a->add_option("--subsets", f.subsets, "Random subsets M per size")->capture_default_str();
        a->add_option("--samples", f.samples, "Monte Carlo samples per estimate (with --mc)")->capture_default_str();
        a->add_flag("--mc", f.mc, "Estimate by sampling instead of plug-in");
        a->add_option("--boundary", f.boundary, "resample or limit")->capture_default_str();
        a->add_option("--properties", f.props, "Subset of density,knn,clustering,rich_club")->delimiter(',');
        f.common.attach(a);
    };

    BenchFlags syn_flags;
    std::optional<std::string> syn_fitness, syn_gen;
    std::string syn_density;
    std::optional<std::string> syn_truth;
    auto* syn = bench->add_subcommand("synthetic", "Ground truth sampled from the fitness model");
    syn->add_option("--fitness", syn_fitness, "node,fitness CSV");
    syn->add_option("--fitness-gen", syn_gen, "lognormal:mu,sigma,N or powerlaw:gamma,xmin,N");
    syn->add_option("--density", syn_density, "Target density of the generating ensemble, in (0, 1)");
    syn->add_option("--ground-truth", syn_truth, "Also write the sampled ground-truth graph as an edge list");
    attach_bench(syn, syn_flags);

    BenchFlags real_flags;
    GraphSource real_src;
    auto* real = bench->add_subcommand("real", "Ground truth supplied as an edge list");
    real->add_option("--graph", real_src.graph, "Edge list CSV");
    real->add_option("--fitness", real_src.fitness, "node,fitness CSV");
    real->add_option("--fitness-from-strength", real_src.strength_mode, "Use node strength (out|total) as fitness");
    attach_bench(real, real_flags);

    auto fail_json = [](const Failure& f) {
        json err{{"error", {{"kind", f.kind}, {"message", f.message}}}};
        if (!f.violations.empty()) err["error"]["violations"] = f.violations;
        std::cerr << err.dump() << "\n";
        return f.kind == "usage" ? 2 : 1;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail_json(Failure{"usage", e.what(), {}});
    }

    try {
        Violations v;
        if (*metrics) {
            run.command = "metrics";
            v.require(!metrics_graph.empty(), "--graph is required");
            metrics_common.validate(v);
            v.raise();
            run.seed = metrics_common.seed_value;
            run.config = {{"graph", metrics_graph}, {"format", metrics_common.format}};
            auto [w, g] = load_graph(run, metrics_graph);
            run.labels = graph_labels(g.get());
            fr_buffer* b = nullptr;
            check(fr_metrics_write(g.get(), metrics_common.format_value, &b));
            emit(run, metrics_common.out, {{metrics_common.out.value_or(""), take(b)}});
        } else if (*cm) {
            run.command = "cm-fit";
            validate_source(v, cm_src, false);
            const auto tol = v.real("--tol", cm_tol);
            if (tol) v.require(*tol > 0.0, "--tol must be positive");
            const auto maxit = v.u64("--max-iter", cm_maxit);
            if (maxit) v.require(*maxit > 0, "--max-iter must be positive");
            const bool scatter = cm_src.fitness || !cm_src.strength_mode.empty();
            v.require(!scatter || cm_scatter || cm_common.out, "the scatter needs --scatter or --out");
            v.require(!cm_scatter || scatter, "--scatter needs --fitness or --fitness-from-strength");
            cm_common.validate(v);
            v.raise();
            run.seed = cm_common.seed_value;
            auto [w, g] = load_graph(run, cm_src.graph);
            run.labels = graph_labels(g.get());
            fr_cm_fit* raw = nullptr;
            check(fr_cm_fit_graph(g.get(), *tol, static_cast<std::size_t>(*maxit), &raw));
            CmFit fit(raw);
            fr_buffer* b = nullptr;
            check(fr_cm_fit_write(fit.get(), cm_common.format_value, &b));
            std::vector<Output> outputs{{cm_common.out.value_or(""), take(b)}};
            run.config = {{"graph", cm_src.graph}, {"tol", *tol}, {"max_iter", *maxit},
                          {"format", cm_common.format}, {"residual", fr_cm_fit_residual(fit.get())},
                          {"iterations", fr_cm_fit_iterations(fit.get())}};
            if (scatter) {
                auto f = fitness_for_graph(run, w.get(), g.get(), cm_src);
                check(fr_cm_fit_write_scatter(fit.get(), f.get(), &b));
                const auto path = cm_scatter.value_or(*cm_common.out + ".scatter.csv");
                run.config["scatter"] = path;
                if (cm_common.out) {
                    outputs.push_back({path, take(b)});
                } else {
                    write_atomically({{path, take(b)}});
                }
            }
            emit(run, cm_common.out, std::move(outputs));
        } else if (*cal || *rec) {
            const bool is_rec = static_cast<bool>(*rec);
            auto& common = is_rec ? rec_common : cal_common;
            const auto& fit_path = is_rec ? rec_fitness : cal_fitness;
            const auto& obs_path = is_rec ? rec_observed : cal_observed;
            run.command = is_rec ? "reconstruct" : "calibrate";
            v.require(!fit_path.empty(), "--fitness is required");
            v.require(!obs_path.empty(), "--observed is required");
            fr_reconstruct_options opt;
            fr_reconstruct_options_init(&opt);
            if (is_rec) {
                if (rec_mode == "mc") opt.mode = FR_MODE_MONTE_CARLO;
                else v.require(rec_mode == "analytic", "--mode: expected analytic or mc, got '" + rec_mode + "'");
                if (auto s = v.u64("--samples", rec_samples)) {
                    v.require(*s >= 2, "--samples must be at least 2");
                    opt.samples = static_cast<std::size_t>(*s);
                }
                opt.properties = parse_properties(v, rec_props);
            }
            common.validate(v);
            v.raise();
            run.seed = common.seed_value;
            opt.seed = common.seed_value;
            opt.threads = common.thread_count;
            run.input(fit_path);
            fr_fitness* fraw = nullptr;
            check(fr_fitness_read(fit_path.c_str(), &fraw));
            Fitness f(fraw);
            run.labels = fitness_labels(f.get());
            run.input(obs_path);
            fr_observation* oraw = nullptr;
            check(fr_observation_read(obs_path.c_str(), f.get(), &oraw));
            Observation obs(oraw);
            run.config = {{"fitness", fit_path}, {"observed", obs_path}, {"format", common.format}};
            fr_buffer* b = nullptr;
            if (!is_rec) {
                fr_calibration c;
                check(fr_calibrate(f.get(), obs.get(), &c));
                check(fr_calibration_write(&c, common.format_value, &b));
            } else {
                run.config["mode"] = rec_mode;
                run.config["samples"] = opt.samples;
                run.config["properties"] = property_names(opt.properties);
                run.config["threads"] = opt.threads;
                fr_estimates* eraw = nullptr;
                check(fr_reconstruct(f.get(), obs.get(), &opt, &eraw));
                Estimates est(eraw);
                check(fr_estimates_write(est.get(), common.format_value, &b));
            }
            emit(run, common.out, {{common.out.value_or(""), take(b)}});
        } else if (*smp) {
            run.command = "sample";
            v.require(!smp_fitness.empty(), "--fitness is required");
            std::optional<double> z;
            if (smp_z.empty()) v.add("--z is required");
            else if ((z = v.real("--z", smp_z))) v.require(*z > 0.0, "--z must be positive");
            const auto count = v.u64("--count", smp_count);
            if (count) {
                v.require(*count >= 1, "--count must be at least 1");
                v.require(*count <= 1 || smp_common.out, "--count > 1 needs --out");
            }
            smp_common.validate(v);
            v.require(smp_common.format == "csv", "--format: sample writes edge lists, only csv is supported");
            v.raise();
            run.seed = smp_common.seed_value;
            run.input(smp_fitness);
            fr_fitness* fraw = nullptr;
            check(fr_fitness_read(smp_fitness.c_str(), &fraw));
            Fitness f(fraw);
            run.labels = fitness_labels(f.get());
            run.config = {{"fitness", smp_fitness}, {"z", *z}, {"count", *count}};
            std::vector<Output> outputs;
            for (std::uint64_t i = 0; i < *count; ++i) {
                // graph i uses seed + i so a single draw matches --count 1
                fr_graph* g = nullptr;
                check(fr_sample(f.get(), *z, smp_common.seed_value + i, &g));
                Graph graph(g);
                fr_buffer* b = nullptr;
                check(fr_graph_write_edge_list(graph.get(), &b));
                std::string path = smp_common.out.value_or("");
                if (*count > 1) {
                    const fs::path p(path);
                    path = (p.parent_path() / (p.stem().string() + "_" + std::to_string(i) + p.extension().string()))
                               .string();
                }
                outputs.push_back({path, take(b)});
            }
            emit(run, smp_common.out, std::move(outputs));
        } else if (*syn || *real) {
            const bool is_syn = static_cast<bool>(*syn);
            auto& flags = is_syn ? syn_flags : real_flags;
            run.command = is_syn ? "bench synthetic" : "bench real";
            std::optional<double> density;
            if (is_syn) {
                v.require(syn_fitness.has_value() != syn_gen.has_value(),
                          "exactly one of --fitness or --fitness-gen is required");
                if (syn_density.empty()) v.add("--density is required");
                else if ((density = v.real("--density", syn_density)))
                    v.require(*density > 0.0 && *density < 1.0, "--density must lie in (0, 1)");
            } else {
                validate_source(v, real_src, true);
            }
            v.require(!flags.grid.empty(), "--n-grid is required");
            resolve_grid(v, flags.grid, std::nullopt);
            fr_bench_options opt;
            fr_bench_options_init(&opt);
            if (auto m = v.u64("--subsets", flags.subsets)) {
                v.require(*m >= 1, "--subsets must be at least 1");
                opt.subsets = static_cast<std::size_t>(*m);
            }
            if (auto s = v.u64("--samples", flags.samples)) {
                v.require(!flags.mc || *s >= 2, "--samples must be at least 2 with --mc");
                opt.samples = static_cast<std::size_t>(*s);
            }
            if (flags.boundary == "limit") opt.boundary = FR_BOUNDARY_LIMIT;
            else v.require(flags.boundary == "resample", "--boundary: expected resample or limit");
            opt.monte_carlo = flags.mc ? 1 : 0;
            opt.properties = parse_properties(v, flags.props);
            flags.common.validate(v);
            v.raise();
            run.seed = flags.common.seed_value;
            opt.seed = flags.common.seed_value;
            opt.threads = flags.common.thread_count;

            Fitness f;
            Weighted w;
            Graph g0;
            if (is_syn) {
                fr_fitness* raw = nullptr;
                if (syn_fitness) {
                    run.input(*syn_fitness);
                    check(fr_fitness_read(syn_fitness->c_str(), &raw));
                } else {
                    check(fr_fitness_generate(syn_gen->c_str(), flags.common.seed_value, &raw));
                }
                f.reset(raw);
                run.labels = fitness_labels(f.get());
            } else {
                std::tie(w, g0) = load_graph(run, real_src.graph);
                f = fitness_for_graph(run, w.get(), g0.get(), real_src);
                run.labels = graph_labels(g0.get());
            }
            Violations range;
            const auto grid = resolve_grid(range, flags.grid, fr_fitness_size(f.get()));
            range.raise();
            opt.n_values = grid.data();
            opt.n_count = grid.size();
            run.config = {{"n_grid", grid},         {"subsets", opt.subsets},
                          {"samples", opt.samples}, {"monte_carlo", flags.mc},
                          {"boundary", flags.boundary}, {"properties", property_names(opt.properties)},
                          {"threads", opt.threads}, {"format", flags.common.format}};
            if (is_syn) {
                run.config["density"] = *density;
                if (syn_fitness) run.config["fitness"] = *syn_fitness;
                else run.config["fitness_gen"] = *syn_gen;
            } else {
                run.config["graph"] = real_src.graph;
                if (real_src.fitness) run.config["fitness"] = *real_src.fitness;
                else run.config["fitness_from_strength"] = real_src.strength_mode;
            }

            fr_bench* raw = nullptr;
            if (is_syn) check(fr_bench_synthetic(f.get(), *density, &opt, &raw));
            else check(fr_bench_real(g0.get(), f.get(), &opt, &raw));
            Bench result(raw);
            for (std::size_t i = 0; i < fr_bench_notice_count(result.get()); ++i)
                std::cerr << "notice: " << fr_bench_notice(result.get(), i) << "\n";
            fr_buffer* b = nullptr;
            check(fr_bench_write(result.get(), flags.common.format_value, &b));
            std::vector<Output> outputs{{flags.common.out.value_or(""), take(b)}};
            if (is_syn && syn_truth) {
                fr_graph* graw = nullptr;
                check(fr_bench_ground_truth(result.get(), &graw));
                Graph truth(graw);
                check(fr_graph_write_edge_list(truth.get(), &b));
                run.config["ground_truth"] = *syn_truth;
                if (flags.common.out) outputs.push_back({*syn_truth, take(b)});
                else write_atomically({{*syn_truth, take(b)}});
            }
            emit(run, flags.common.out, std::move(outputs));
        }
    } catch (const Failure& f) {
        return fail_json(f);
    } catch (const std::exception& e) {
        return fail_json(Failure{"internal", e.what(), {}});
    }
    return 0;
}
