#include "szego/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include "szego/asymptotics.hpp"
#include "szego/calibration.hpp"
#include "szego/hardy.hpp"
#include "szego/oscillatory.hpp"

namespace szego {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// ---------------------------------------------------------------- config

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
    if constexpr (std::is_same_v<T, double>) {
        if (!std::isfinite(out)) throw ConfigError(where + "." + key + ": not finite");
    }
}

void read_number(const json& j, const char* key, double& out, const std::string& where) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) throw ConfigError(where + "." + key + ": expected a number");
    read(j, key, out, where);
}

void read_int(const json& j, const char* key, int& out, const std::string& where) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    read(j, key, out, where);
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig c;
    const std::string top = "config";
    check_keys(j, top, {"weights", "nu", "k_grid", "calibration", "quadrature", "tolerances",
                        "tolerance_scale", "seed", "output_dir", "threads", "kernel",
                        "oscillatory", "loci"});
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (!w.is_array() || w.empty()) throw ConfigError("config.weights: expected a nonempty array");
        c.weights.clear();
        for (const auto& v : w) {
            if (!v.is_number_integer() || v.get<int>() <= 0)
                throw ConfigError("config.weights: entries must be positive integers");
            c.weights.push_back(v.get<int>());
        }
    }
    read_number(j, "nu", c.nu, top);
    if (j.contains("k_grid")) {
        const auto& g = j.at("k_grid");
        check_keys(g, "config.k_grid", {"min", "max", "step", "admissible_filter"});
        read_int(g, "min", c.k_min, "config.k_grid");
        read_int(g, "max", c.k_max, "config.k_grid");
        read_int(g, "step", c.k_step, "config.k_grid");
        read(g, "admissible_filter", c.admissible_filter, "config.k_grid");
    }
    if (j.contains("calibration")) {
        const auto& g = j.at("calibration");
        check_keys(g, "config.calibration", {"mode", "scale", "pairs", "levels"});
        std::string mode = c.measure_scale ? "measure" : "fixed";
        read(g, "mode", mode, "config.calibration");
        if (mode != "measure" && mode != "fixed")
            throw ConfigError("config.calibration.mode: expected 'measure' or 'fixed'");
        c.measure_scale = mode == "measure";
        read_number(g, "scale", c.scale, "config.calibration");
        read_int(g, "levels", c.calibration_levels, "config.calibration");
        if (g.contains("pairs")) {
            c.calibration_pairs.clear();
            for (const auto& p : g.at("pairs")) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
                    throw ConfigError("config.calibration.pairs: expected [k, n] integer pairs");
                c.calibration_pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
            }
        }
    }
    if (j.contains("quadrature")) {
        const auto& g = j.at("quadrature");
        const std::string w = "config.quadrature";
        check_keys(g, w, {"inner_tol", "cutoff_D", "strata", "replicas", "circle_points", "volume_k_ref"});
        read_number(g, "inner_tol", c.inner_tol, w);
        read_number(g, "cutoff_D", c.cutoff_D, w);
        read_int(g, "strata", c.strata, w);
        read_int(g, "replicas", c.replicas, w);
        read_int(g, "circle_points", c.circle_points, w);
        read_int(g, "volume_k_ref", c.volume_k_ref, w);
    }
    if (j.contains("tolerances")) {
        const auto& g = j.at("tolerances");
        const std::string w = "config.tolerances";
        check_keys(g, w, {"dim_exponent", "dim_stability", "diag_exponent", "diag_ratio", "decay_order",
                          "kernel_bound", "gaussian", "inner_ratio_target", "inner_ratio", "chain",
                          "radial", "orthogonality", "equivariance", "d_gt", "calibration_spread",
                          "calibration_snap"});
        auto& t = c.tol;
        read_number(g, "dim_exponent", t.dim_exponent, w);
        read_number(g, "dim_stability", t.dim_stability, w);
        read_number(g, "diag_exponent", t.diag_exponent, w);
        read_number(g, "diag_ratio", t.diag_ratio, w);
        read_int(g, "decay_order", t.decay_order, w);
        read_number(g, "kernel_bound", t.kernel_bound, w);
        read_number(g, "gaussian", t.gaussian, w);
        read_number(g, "inner_ratio_target", t.inner_ratio_target, w);
        read_number(g, "inner_ratio", t.inner_ratio, w);
        read_number(g, "chain", t.chain, w);
        read_number(g, "radial", t.radial, w);
        read_number(g, "orthogonality", t.orthogonality, w);
        read_number(g, "equivariance", t.equivariance, w);
        read_number(g, "d_gt", t.d_gt, w);
        read_number(g, "calibration_spread", t.calibration_spread, w);
        read_number(g, "calibration_snap", t.calibration_snap, w);
    }
    read_number(j, "tolerance_scale", c.tolerance_scale, top);
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw ConfigError("config.seed: expected a nonnegative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    read(j, "output_dir", c.output_dir, top);
    read_int(j, "threads", c.threads, top);
    if (j.contains("kernel")) {
        const auto& g = j.at("kernel");
        check_keys(g, "config.kernel", {"point", "off_locus_offset", "pair"});
        if (g.contains("point")) c.point = g.at("point");
        read_number(g, "off_locus_offset", c.off_locus_offset, "config.kernel");
        if (g.contains("pair")) {
            const auto& p = g.at("pair");
            check_keys(p, "config.kernel.pair", {"x", "y", "k_min", "k_max"});
            if (!p.contains("x") || !p.contains("y")) throw ConfigError("config.kernel.pair: needs x and y");
            c.has_pair = true;
            c.pair_x = p.at("x");
            c.pair_y = p.at("y");
            read_int(p, "k_min", c.pair_k_min, "config.kernel.pair");
            read_int(p, "k_max", c.pair_k_max, "config.kernel.pair");
        }
    }
    if (j.contains("oscillatory")) {
        const auto& g = j.at("oscillatory");
        const std::string w = "config.oscillatory";
        check_keys(g, w, {"k_values", "chain_k", "vartheta", "r"});
        if (g.contains("k_values")) {
            c.inner_k.clear();
            for (const auto& v : g.at("k_values")) {
                if (!v.is_number() || !(v.get<double>() > 0.0))
                    throw ConfigError(w + ".k_values: entries must be positive numbers");
                c.inner_k.push_back(v.get<double>());
            }
        }
        read_number(g, "chain_k", c.chain_k, w);
        read_number(g, "vartheta", c.vartheta, w);
        read_number(g, "r", c.inner_r, w);
    }
    if (j.contains("loci")) {
        const auto& g = j.at("loci");
        check_keys(g, "config.loci", {"samples"});
        read_int(g, "samples", c.loci_samples, "config.loci");
    }
    if (!(c.nu > 0.0)) throw ConfigError("config.nu: must be positive");
    if (c.k_min < 1 || c.k_max < c.k_min || c.k_step < 1) throw ConfigError("config.k_grid: invalid range");
    if (c.threads < 1) throw ConfigError("config.threads: must be at least 1");
    if (!(c.tolerance_scale > 0.0)) throw ConfigError("config.tolerance_scale: must be positive");
    if (!(c.scale > 0.0)) throw ConfigError("config.calibration.scale: must be positive");
    if (!(c.inner_r >= 0.0 && c.inner_r < 1.0)) throw ConfigError("config.oscillatory.r: must lie in [0, 1)");
    if (!(c.cutoff_D > 2.0)) throw ConfigError("config.quadrature.cutoff_D: must exceed 2");
    if (c.loci_samples < 1) throw ConfigError("config.loci.samples: must be positive");
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(is, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

json ExperimentConfig::echo() const {
    json pairs = json::array();
    for (auto [k, n] : calibration_pairs) pairs.push_back({k, n});
    json j = {
        {"weights", weights},
        {"nu", nu},
        {"k_grid", {{"min", k_min}, {"max", k_max}, {"step", k_step}, {"admissible_filter", admissible_filter}}},
        {"calibration", {{"mode", measure_scale ? "measure" : "fixed"}, {"scale", scale}, {"pairs", pairs}, {"levels", calibration_levels}}},
        {"quadrature", {{"inner_tol", inner_tol}, {"cutoff_D", cutoff_D}, {"strata", strata}, {"replicas", replicas},
                        {"circle_points", circle_points}, {"volume_k_ref", volume_k_ref}}},
        {"tolerances", {{"dim_exponent", tol.dim_exponent}, {"dim_stability", tol.dim_stability},
                        {"diag_exponent", tol.diag_exponent}, {"diag_ratio", tol.diag_ratio},
                        {"decay_order", tol.decay_order}, {"kernel_bound", tol.kernel_bound},
                        {"gaussian", tol.gaussian}, {"inner_ratio_target", tol.inner_ratio_target},
                        {"inner_ratio", tol.inner_ratio}, {"chain", tol.chain}, {"radial", tol.radial},
                        {"orthogonality", tol.orthogonality}, {"equivariance", tol.equivariance},
                        {"d_gt", tol.d_gt}, {"calibration_spread", tol.calibration_spread},
                        {"calibration_snap", tol.calibration_snap}}},
        {"tolerance_scale", tolerance_scale},
        {"seed", seed},
        {"output_dir", output_dir},
        {"threads", threads},
        {"kernel", {{"point", point}, {"off_locus_offset", off_locus_offset}}},
        {"oscillatory", {{"k_values", inner_k}, {"chain_k", chain_k}, {"vartheta", vartheta}, {"r", inner_r}}},
        {"loci", {{"samples", loci_samples}}},
    };
    if (has_pair)
        j["kernel"]["pair"] = {{"x", pair_x}, {"y", pair_y}, {"k_min", pair_k_min}, {"k_max", pair_k_max}};
    return j;
}

namespace {

// ---------------------------------------------------------------- output

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : os_(path, std::ios::binary) {
        if (!os_) throw Error("cannot write " + path.string());
        row(header);
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << cells[i];
        }
        os_ << '\n';
    }

private:
    std::ofstream os_;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

void write_summary(const std::filesystem::path& dir, const json& j) {
    std::ofstream os(dir / "summary.json", std::ios::binary);
    os << j.dump(2) << '\n';
}

struct Report {
    json summary = json::object();
    json verdicts = json::object();
    std::filesystem::path dir;

    void verdict(const std::string& name, bool ok) { verdicts[name] = ok; }
};

int run_command(const ExperimentConfig& cfg, const std::string& name,
                const std::function<void(Report&)>& body) {
    Report rep;
    rep.dir = cfg.output_dir;
    rep.summary["command"] = name;
    rep.summary["config"] = cfg.echo();
    int code = kExitPass;
    try {
        std::filesystem::create_directories(rep.dir);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot create output directory: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        body(rep);
        bool pass = true;
        for (auto it = rep.verdicts.begin(); it != rep.verdicts.end(); ++it)
            if (!it.value().get<bool>()) pass = false;
        code = pass ? kExitPass : kExitVerification;
    } catch (const ConfigError& e) {
        rep.summary["error"] = std::string("configuration: ") + e.what();
        code = kExitConfig;
    } catch (const std::exception& e) {
        rep.summary["error"] = e.what();
        code = kExitVerification;
    }
    rep.summary["verdicts"] = rep.verdicts;
    rep.summary["pass"] = code == kExitPass;
    rep.summary["exit_code"] = code;
    write_summary(rep.dir, rep.summary);
    if (rep.summary.contains("error")) std::cerr << "error: " << rep.summary["error"].get<std::string>() << '\n';
    return code;
}

// ---------------------------------------------------------------- helpers

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += threads) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

ModelManifold setup_model(const ExperimentConfig& cfg, bool need_regular_level = true) {
    try {
        ModelManifold M(cfg.weights);
        if (need_regular_level) {
            if (!(cfg.nu > M.lambda_min() && cfg.nu < M.lambda_max()))
                throw ConfigError("nu = " + format_double(cfg.nu) + " lies outside the open interval (" +
                                  format_double(M.lambda_min()) + ", " + format_double(M.lambda_max()) +
                                  ") of moment values");
            for (double c : M.critical_values())
                if (std::abs(c - cfg.nu) < 1e-6)
                    throw ConfigError("nu = " + format_double(cfg.nu) +
                                      " is a critical value of lambda; the level set is singular");
        }
        return M;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

ManifoldPoint parse_point(const ModelManifold& M, const json& desc, double nu, Rng& rng,
                          const std::string& where) {
    try {
        if (!desc.is_object() || !desc.contains("kind") || !desc.at("kind").is_string())
            throw ConfigError(where + ": point needs a string 'kind'");
        std::string kind = desc.at("kind").get<std::string>();
        if (kind == "level") {
            check_keys(desc, where, {"kind", "lambda"});
            double lam = nu;
            read_number(desc, "lambda", lam, where);
            return point_on_level(M, lam, rng);
        }
        if (kind == "bending") {
            check_keys(desc, where, {"kind", "diagonal", "bend", "lambda"});
            if (!desc.contains("diagonal")) throw ConfigError(where + ": bending point needs 'diagonal'");
            double diag = 0.0, bend = 0.0, lam = nu;
            read_number(desc, "diagonal", diag, where);
            read_number(desc, "bend", bend, where);
            read_number(desc, "lambda", lam, where);
            return bending_point(M, lam, diag, bend);
        }
        if (kind == "directions") {
            check_keys(desc, where, {"kind", "u"});
            if (!desc.contains("u") || !desc.at("u").is_array() ||
                static_cast<int>(desc.at("u").size()) != M.factors())
                throw ConfigError(where + ": 'u' must list one direction per factor");
            std::vector<Vec3> u;
            for (const auto& v : desc.at("u")) {
                if (!v.is_array() || v.size() != 3) throw ConfigError(where + ": directions are 3-vectors");
                Vec3 d;
                for (int i = 0; i < 3; ++i) {
                    if (!v[i].is_number()) throw ConfigError(where + ": non-numeric direction");
                    d(i) = v[i].get<double>();
                }
                if (!(d.norm() > 0.0)) throw ConfigError(where + ": zero direction");
                u.push_back(d);
            }
            return ManifoldPoint::from_directions(u);
        }
        throw ConfigError(where + ": unknown point kind '" + kind + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

double resolve_scale(const ExperimentConfig& cfg, const ModelManifold& M, Report& rep) {
    json cal;
    if (!cfg.measure_scale) {
        cal["mode"] = "fixed";
        cal["scale_used"] = cfg.scale;
        rep.summary["calibration"] = cal;
        return cfg.scale;
    }
    CalibrationOptions opts;
    opts.levels = cfg.calibration_levels;
    opts.seed = cfg.seed + 101;
    CalibrationResult r;
    try {
        r = calibrate_convention(M, cfg.calibration_pairs, opts);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    json entries = json::array();
    CsvWriter csv(rep.dir / "calibration.csv", {"k", "n", "lambda_star", "scale"});
    for (const auto& e : r.entries) csv.row({fmt(e.k), fmt(e.n), fmt(e.lambda_star), fmt(e.scale)});
    for (const auto& e : r.entries)
        entries.push_back({{"k", e.k}, {"n", e.n}, {"lambda_star", e.lambda_star}, {"scale", e.scale}});
    cal["mode"] = "measure";
    cal["entries"] = entries;
    cal["scale_measured"] = r.scale;
    cal["spread"] = r.spread;
    cal["scale_used"] = r.snapped;
    cal["snap_within_tolerance"] =
        std::abs(r.scale - r.snapped) <= cfg.tol.calibration_snap * cfg.tolerance_scale * r.snapped;
    rep.summary["calibration"] = cal;
    return r.snapped;
}

std::vector<KGridEntry> grid_or_config_error(const ModelManifold& M, double nu, int kmin, int kmax,
                                             double s, bool filter, int step) {
    try {
        return make_k_grid(M, nu, kmin, kmax, s, filter, step);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> top_half(const std::vector<double>& v) {
    return {v.begin() + static_cast<long>(v.size() / 2), v.end()};
}

double relative_spread(const std::vector<double>& v) {
    double lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    return (hi - lo) / mean;
}

}  // namespace

// ---------------------------------------------------------------- commands

int cmd_dims(const ExperimentConfig& cfg) {
    return run_command(cfg, "dims", [&](Report& rep) {
        ModelManifold M = setup_model(cfg);
        double s = resolve_scale(cfg, M, rep);
        auto grid = grid_or_config_error(M, cfg.nu, cfg.k_min, cfg.k_max, s, cfg.admissible_filter, cfg.k_step);
        if (grid.size() < 3) throw ConfigError("k-grid has fewer than 3 admissible levels");
        ReducedVolumeOptions ro;
        ro.strata = cfg.strata;
        ro.replicas = cfg.replicas;
        ro.circle_points = cfg.circle_points;
        ro.seed = cfg.seed;
        ReducedVolume rv = reduced_volume(M, cfg.nu, ro);
        double C = calibrate_volume_normalization(DimensionReading::Weyl, cfg.volume_k_ref);
        double C_actual = calibrate_volume_normalization(DimensionReading::Actual, cfg.volume_k_ref);

        CsvWriter csv(rep.dir / "dims.csv", {"k", "n", "exact_dim", "predicted", "ratio"});
        std::vector<double> ks, dims, ratios;
        for (const auto& e : grid) {
            double exact = static_cast<double>(isotype_dimension(M, e.k, e.n));
            double pred = predict_dimension(M, cfg.nu, e.k, rv.value, C, DimensionReading::Weyl);
            csv.row({fmt(e.k), fmt(e.n), fmt(isotype_dimension(M, e.k, e.n)), fmt(pred), fmt(exact / pred)});
            ks.push_back(e.k);
            dims.push_back(exact);
            ratios.push_back(exact / pred);
        }
        PowerLawFit fit = fit_power_law(ks, dims);
        const double ts = cfg.tolerance_scale;
        double expected = M.d() - 1.0;
        double tol_exp = (cfg.tol.dim_exponent < 0 ? 0.05 * (M.d() - 1) : cfg.tol.dim_exponent) * ts;
        double spread = relative_spread(top_half(ratios));

        // Diagnostics: the same fit with a 1/k correction term, and a plain
        // fit on a grid far beyond k_max.
        Eigen::MatrixXd A(static_cast<Eigen::Index>(ks.size()), 3);
        Eigen::VectorXd b(static_cast<Eigen::Index>(ks.size()));
        for (std::size_t i = 0; i < ks.size(); ++i) {
            A(i, 0) = std::log(ks[i]);
            A(i, 1) = 1.0;
            A(i, 2) = 1.0 / ks[i];
            b(i) = std::log(dims[i]);
        }
        Eigen::Vector3d corr = A.colPivHouseholderQr().solve(b);
        int far_step = std::max(1, cfg.k_max / 2);
        auto far = make_k_grid(M, cfg.nu, 10 * cfg.k_max, 40 * cfg.k_max, s, true, far_step);
        std::vector<double> fk, fd;
        for (const auto& e : far) {
            fk.push_back(e.k);
            fd.push_back(static_cast<double>(isotype_dimension(M, e.k, e.n)));
        }
        json diag;
        diag["corrected_exponent"] = corr(0);
        if (fk.size() >= 3) diag["large_k_exponent"] = fit_power_law(fk, fd).exponent;
        diag["large_k_range"] = {far.front().k, far.back().k};

        rep.summary["fit"] = {{"exponent", fit.exponent}, {"constant", fit.constant},
                              {"residual_rms", fit.residual_rms}, {"loo_spread", fit.loo_spread},
                              {"samples", fit.samples}};
        rep.summary["expected_exponent"] = expected;
        rep.summary["exponent_tolerance"] = tol_exp;
        rep.summary["top_half_ratio_spread"] = spread;
        rep.summary["normalization"] = {{"reduced_volume", rv.value}, {"reduced_volume_error", rv.error},
                                        {"volume_constant_weyl", C}, {"volume_constant_actual", C_actual},
                                        {"reading", "weyl"}, {"manifold_volume", M.volume()}};
        rep.summary["diagnostics"] = diag;
        rep.verdict("exponent", std::abs(fit.exponent - expected) <= tol_exp);
        rep.verdict("ratio_stability", spread <= cfg.tol.dim_stability * ts);
    });
}

int cmd_kernel(const ExperimentConfig& cfg) {
    return run_command(cfg, "kernel", [&](Report& rep) {
        ModelManifold M = setup_model(cfg);
        Rng rng(cfg.seed);
        ManifoldPoint x = parse_point(M, cfg.point, cfg.nu, rng, "config.kernel.point");
        if (std::abs(lambda_of(M, x) - cfg.nu) > 1e-8)
            throw ConfigError("config.kernel.point: point is not on the level set");
        double off_level = cfg.nu + cfg.off_locus_offset;
        if (!(off_level > M.lambda_min() && off_level < M.lambda_max()))
            throw ConfigError("config.kernel.off_locus_offset: level outside the moment image");
        ManifoldPoint y = point_on_level(M, off_level, rng);
        std::optional<ManifoldPoint> px, py;
        if (cfg.has_pair) {
            px = parse_point(M, cfg.pair_x, cfg.nu, rng, "config.kernel.pair.x");
            py = parse_point(M, cfg.pair_y, cfg.nu, rng, "config.kernel.pair.y");
        }
        double s = resolve_scale(cfg, M, rep);
        auto grid = grid_or_config_error(M, cfg.nu, cfg.k_min, cfg.k_max, s, cfg.admissible_filter, cfg.k_step);
        if (grid.size() < 3) throw ConfigError("k-grid has fewer than 3 admissible levels");

        const double vol = M.volume();
        const int count = static_cast<int>(grid.size());
        std::vector<double> on(count), off(count), pred(count);
        parallel_for(count, cfg.threads, [&](int i) {
            SectionSpace S(M, grid[i].k);
            IsotypeBasis B = isotype_basis(S, grid[i].n);
            on[i] = equivariant_kernel(S, B, x, x).real() / vol;
            off[i] = equivariant_kernel(S, B, y, y).real() / vol;
            pred[i] = predict_diagonal(M, cfg.nu, x, grid[i].k);
        });
        const double ts = cfg.tolerance_scale;
        const int N = cfg.tol.decay_order;
        std::vector<double> ks;
        CsvWriter kcsv(rep.dir / "kernel.csv", {"k", "n", "exact_value", "predicted_value", "ratio"});
        CsvWriter dcsv(rep.dir / "decay.csv", {"k", "n", "on_locus", "off_locus", "on_locus_scaled", "off_locus_scaled"});
        bool bound_ok = true;
        double worst_bound = 0.0;
        for (int i = 0; i < count; ++i) {
            double k = grid[i].k;
            ks.push_back(k);
            kcsv.row({fmt(grid[i].k), fmt(grid[i].n), fmt(on[i]), fmt(pred[i]), fmt(on[i] / pred[i])});
            double scale = std::pow(k, N);
            dcsv.row({fmt(grid[i].k), fmt(grid[i].n), fmt(on[i]), fmt(off[i]), fmt(on[i] * scale), fmt(off[i] * scale)});
            if (k >= 10) {
                double bound = cfg.tol.kernel_bound * std::pow(k / kPi, M.d());
                worst_bound = std::max({worst_bound, on[i] / bound, off[i] / bound});
                if (on[i] > bound || off[i] > bound) bound_ok = false;
            }
        }
        PowerLawFit fit = fit_power_law(ks, on);
        double ratio_top = on.back() / pred.back();
        DecayReport off_rep = check_decay(ks, off, N);
        DecayReport on_rep = check_decay(ks, on, N);
        rep.summary["fit"] = {{"exponent", fit.exponent}, {"constant", fit.constant},
                              {"residual_rms", fit.residual_rms}, {"loo_spread", fit.loo_spread}};
        rep.summary["expected_exponent"] = M.d() - 0.5;
        rep.summary["ratio_top"] = ratio_top;
        rep.summary["field_norm"] = field_norm(M, x).value;
        rep.summary["off_locus"] = {{"lambda", lambda_of(M, y)}, {"largest_order", off_rep.largest_order},
                                    {"verdict", decay_verdict_name(off_rep.verdict)}};
        rep.summary["on_locus_control"] = {{"largest_order", on_rep.largest_order},
                                           {"verdict", decay_verdict_name(on_rep.verdict)}};
        rep.summary["kernel_bound_max_fraction"] = worst_bound;
        rep.summary["normalization"] = {{"manifold_volume", vol}};
        rep.verdict("diagonal_exponent", std::abs(fit.exponent - (M.d() - 0.5)) <= cfg.tol.diag_exponent * ts);
        rep.verdict("diagonal_ratio", std::abs(ratio_top - 1.0) <= cfg.tol.diag_ratio * ts);
        rep.verdict("off_locus_decay", off_rep.verdict != DecayVerdict::Inconclusive && off_rep.largest_order >= N);
        rep.verdict("on_locus_control", on_rep.verdict != DecayVerdict::Inconclusive && on_rep.largest_order < N);
        rep.verdict("kernel_bound", bound_ok);

        if (px) {
            auto pgrid = grid_or_config_error(M, cfg.nu, cfg.pair_k_min, cfg.pair_k_max, s, true, 1);
            if (pgrid.size() < 3) throw ConfigError("pair k-grid has fewer than 3 admissible levels");
            std::vector<double> ratio(pgrid.size());
            parallel_for(static_cast<int>(pgrid.size()), cfg.threads, [&](int i) {
                std::vector<KGridEntry> one{pgrid[i]};
                ratio[i] = pair_series(M, one, *px, *py)[0];
            });
            CsvWriter pcsv(rep.dir / "pairs.csv", {"k", "n", "ratio", "bound"});
            bool ok = true;
            std::size_t tail = pgrid.size() / 2;
            for (std::size_t i = 0; i < pgrid.size(); ++i) {
                double bound = std::pow(static_cast<double>(pgrid[i].k), -N);
                pcsv.row({fmt(pgrid[i].k), fmt(pgrid[i].n), fmt(ratio[i]), fmt(bound)});
                if (i >= tail && !(ratio[i] < bound)) ok = false;
            }
            rep.summary["pair"] = {{"tail_start_k", pgrid[tail].k}, {"last_ratio", ratio.back()}};
            rep.verdict("off_orbit_pair", ok);
        }
    });
}

int cmd_oscillatory(const ExperimentConfig& cfg) {
    return run_command(cfg, "oscillatory", [&](Report& rep) {
        ModelManifold M = setup_model(cfg);
        Rng rng(cfg.seed);
        ManifoldPoint x = parse_point(M, cfg.point, cfg.nu, rng, "config.kernel.point");
        if (std::abs(lambda_of(M, x) - cfg.nu) > 1e-8)
            throw ConfigError("config.kernel.point: point is not on the level set");
        ModelParams p = model_params_at(M, x);
        const double ts = cfg.tolerance_scale;
        CsvWriter csv(rep.dir / "oscillatory.csv",
                      {"experiment", "k", "parameter", "quadrature_value", "closed_form", "ratio", "deviation"});

        double worst_j = 0.0;
        for (double lam : {0.5, 1.0, 2.0})
            for (double xi : {-1.0, 0.5, 1.0, 3.0}) {
                Complex q = gaussian_J_quadrature(lam, xi), c = gaussian_J(lam, xi);
                double dev = std::abs(q - c) / std::abs(c);
                worst_j = std::max(worst_j, dev);
                csv.row({"gaussian_J", "0", "lambda=" + fmt(lam) + ";xi=" + fmt(xi), fmt(q.imag()),
                         fmt(c.imag()), fmt(q.imag() / c.imag()), fmt(dev)});
            }
        rep.verdict("gaussian_J", worst_j < cfg.tol.gaussian * ts);

        double worst_r = 0.0;
        for (double a : {1.0, 10.0, 100.0}) {
            double q = radial_moment(a), c = 1.0 / (4.0 * a);
            worst_r = std::max(worst_r, std::abs(q - c) / c);
            csv.row({"radial_moment", "0", "a=" + fmt(a), fmt(q), fmt(c), fmt(q / c), fmt(std::abs(q - c) / c)});
        }
        rep.verdict("radial_identity", worst_r < cfg.tol.radial * ts);

        InnerOptions io;
        io.D = cfg.cutoff_D;
        io.tol = cfg.inner_tol;
        std::vector<double> devs;
        bool flagged = false;
        for (double k : cfg.inner_k) {
            InnerIntegral r = inner_integral_I(k, cfg.vartheta, cfg.inner_r, 0.0, p, io);
            devs.push_back(r.deviation);
            flagged = flagged || r.resolution_flag;
            csv.row({"inner_integral", fmt(k), "vartheta=" + fmt(cfg.vartheta) + ";r=" + fmt(cfg.inner_r),
                     fmt(std::abs(r.quadrature)), fmt(std::abs(r.leading)),
                     fmt(std::abs(r.quadrature) / std::abs(r.leading)), fmt(r.deviation)});
        }
        json ratios = json::array();
        bool scaling_ok = devs.size() >= 2;
        for (std::size_t i = 1; i < devs.size(); ++i) {
            double q = devs[i] / devs[i - 1];
            ratios.push_back(q);
            if (std::abs(q - cfg.tol.inner_ratio_target) > cfg.tol.inner_ratio * ts) scaling_ok = false;
        }
        rep.summary["inner_integral"] = {{"k", cfg.inner_k}, {"deviation", devs}, {"step_ratios", ratios},
                                         {"resolution_flag", flagged},
                                         {"verdict", devs.size() < 2 ? "inconclusive" : (scaling_ok ? "pass" : "fail")}};
        rep.verdict("inner_scaling", scaling_ok);
        rep.verdict("inner_resolution", !flagged);

        if (!cfg.inner_k.empty()) {
            InnerOptions wide = io;
            wide.D = 2.0 * io.D;
            double k0 = cfg.inner_k.front();
            Complex a = inner_integral_I(k0, cfg.vartheta, cfg.inner_r, 0.0, p, io).quadrature;
            Complex b = inner_integral_I(k0, cfg.vartheta, cfg.inner_r, 0.0, p, wide).quadrature;
            double sens = std::abs(a - b) / std::abs(a);
            rep.summary["cutoff_sensitivity"] = sens;
            rep.verdict("cutoff_independence", sens < 1e-8 * ts);
        }

        ChainResult ch = radial_leading_term(cfg.chain_k, p);
        csv.row({"final_chain", fmt(cfg.chain_k), "field_norm=" + fmt(p.field_norm), fmt(ch.assembled),
                 fmt(ch.closed_form), fmt(ch.ratio), fmt(std::abs(ch.ratio - 1.0))});
        csv.row({"final_chain_series_density", fmt(cfg.chain_k), "field_norm=" + fmt(p.field_norm),
                 fmt(ch.literal_assembled), fmt(ch.closed_form), fmt(ch.literal_ratio),
                 fmt(std::abs(ch.literal_ratio - 1.0))});
        rep.summary["chain"] = {{"k", cfg.chain_k}, {"ratio", ch.ratio}, {"series_density_ratio", ch.literal_ratio},
                                {"quadrature_error", ch.error}};
        rep.verdict("chain_ratio", std::abs(ch.ratio - 1.0) <= cfg.tol.chain * ts);

        double at0 = final_pi_integrand(0.0, 0.0, cfg.chain_k, p);
        double c1 = final_pi_integrand(1e-3, 0.0, cfg.chain_k, p) / 1e-9;
        double c2 = final_pi_integrand(2e-3, 0.0, cfg.chain_k, p) / 8e-9;
        rep.summary["parity"] = {{"value_at_zero", at0}, {"cubic_coefficients", {c1, c2}}};
        rep.verdict("parity", at0 == 0.0 && std::abs(c1 - c2) <= 0.01 * std::abs(c1));
    });
}

int cmd_loci(const ExperimentConfig& cfg) {
    return run_command(cfg, "loci", [&](Report& rep) {
        ModelManifold M = setup_model(cfg);
        Rng rng(cfg.seed);
        const double ts = cfg.tolerance_scale;
        CsvWriter csv(rep.dir / "loci.csv", {"sample", "kind", "lambda", "locus", "signed_distance",
                                              "upsilon_orthogonality", "dlambda_upsilon", "equivariance"});
        int counts[3] = {0, 0, 0};
        double worst_eq = 0.0;
        for (int i = 0; i < cfg.loci_samples; ++i) {
            ManifoldPoint m = ManifoldPoint::random(M, rng);
            LocusClassification c = classify_locus(M, m, cfg.nu);
            counts[static_cast<int>(c.locus)]++;
            GroupElement g = GroupElement::random(rng);
            double eq = (moment_map(M, m.act(g)) - g.rotation() * moment_map(M, m)).norm();
            worst_eq = std::max(worst_eq, eq);
            csv.row({fmt(i), "random", fmt(lambda_of(M, m)), locus_name(c.locus), fmt(c.signed_distance),
                     "", "", fmt(eq)});
        }
        double worst_orth = 0.0, min_out = std::numeric_limits<double>::infinity();
        for (int i = 0; i < cfg.loci_samples; ++i) {
            ManifoldPoint m = point_on_level(M, cfg.nu, rng);
            TangentVector ups = upsilon(M, m);
            double nu_norm = std::sqrt(metric(M, m, ups, ups));
            double orth = 0.0;
            for (int t = 0; t < 3; ++t) {
                TangentVector a = random_tangent(m, rng), b = random_tangent(m, rng);
                TangentVector v = a * lambda_differential(M, m, b) + b * (-lambda_differential(M, m, a));
                double vn = std::sqrt(metric(M, m, v, v));
                if (vn > 0.0) orth = std::max(orth, std::abs(metric(M, m, ups, v)) / (nu_norm * vn));
            }
            double out = lambda_differential(M, m, ups);
            worst_orth = std::max(worst_orth, orth);
            min_out = std::min(min_out, out);
            GroupElement g = GroupElement::random(rng);
            double eq = (moment_map(M, m.act(g)) - g.rotation() * moment_map(M, m)).norm();
            worst_eq = std::max(worst_eq, eq);
            csv.row({fmt(i), "level", fmt(lambda_of(M, m)), "on", fmt(lambda_of(M, m) - cfg.nu), fmt(orth),
                     fmt(out), fmt(eq)});
        }
        double dgt = d_gt();
        rep.summary["counts"] = {{"inside", counts[0]}, {"on", counts[1]}, {"outside", counts[2]}};
        rep.summary["max_orthogonality_residual"] = worst_orth;
        rep.summary["min_outward_derivative"] = min_out;
        rep.summary["max_equivariance_residual"] = worst_eq;
        rep.summary["d_gt"] = dgt;
        rep.verdict("upsilon_orthogonal", worst_orth < cfg.tol.orthogonality * ts);
        rep.verdict("upsilon_outward", min_out > 0.0);
        rep.verdict("equivariance", worst_eq < cfg.tol.equivariance * ts);
        rep.verdict("d_gt", std::abs(dgt - 1.0 / kPi) < cfg.tol.d_gt * ts);
    });
}

int cmd_calibrate(const ExperimentConfig& cfg) {
    return run_command(cfg, "calibrate", [&](Report& rep) {
        ModelManifold M = setup_model(cfg, false);
        CalibrationOptions opts;
        opts.levels = cfg.calibration_levels;
        opts.seed = cfg.seed + 101;
        CalibrationResult r;
        try {
            r = calibrate_convention(M, cfg.calibration_pairs, opts);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        CsvWriter csv(rep.dir / "calibration.csv", {"k", "n", "lambda_star", "scale"});
        for (const auto& e : r.entries) csv.row({fmt(e.k), fmt(e.n), fmt(e.lambda_star), fmt(e.scale)});
        rep.summary["scale_measured"] = r.scale;
        rep.summary["scale_snapped"] = r.snapped;
        rep.summary["spread"] = r.spread;
        const double ts = cfg.tolerance_scale;
        rep.verdict("stable_across_k", r.spread <= cfg.tol.calibration_spread * ts);
        rep.verdict("snap", std::abs(r.scale - r.snapped) <= cfg.tol.calibration_snap * ts * r.snapped);
    });
}

}  // namespace szego
