// Acceptance runner: one [PASS]/[FAIL] line per criterion.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "szego/experiment.hpp"
#include "szego/hardy.hpp"
#include "szego/liegroup.hpp"

using namespace szego;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path g_work = "acceptance_out";

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string num(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

ExperimentConfig two_spheres(const std::string& tag) {
    ExperimentConfig c;
    c.weights = {1, 2};
    c.nu = 1.0;
    c.output_dir = (g_work / tag).string();
    return c;
}

ExperimentConfig three_spheres(const std::string& tag) {
    ExperimentConfig c;
    c.weights = {1, 1, 3};
    c.nu = 1.0;
    c.k_min = 4;
    c.k_max = 20;
    c.point = {{"kind", "bending"}, {"diagonal", 0.98}, {"bend", 0.0}};
    c.threads = 4;
    c.output_dir = (g_work / tag).string();
    return c;
}

json run(int (*cmd)(const ExperimentConfig&), const ExperimentConfig& c) {
    cmd(c);
    return json::parse(slurp(fs::path(c.output_dir) / "summary.json"));
}

bool verdict(const json& s, const char* name) {
    return s.contains("verdicts") && s["verdicts"].contains(name) && s["verdicts"][name].get<bool>();
}

Outcome representation_core() {
    double orth = 0.0;
    for (int m = 0; m <= 10; ++m)
        for (int n = 0; n <= 10; ++n) {
            Complex v = haar_integrate(
                [&](const GroupElement& g) { return Complex(character(m, g) * character(n, g)); }, m + n);
            orth = std::max(orth, std::abs(v - (m == n ? 1.0 : 0.0)));
        }
    double proj = 0.0;
    for (int n = 0; n <= 10; ++n) proj = std::max(proj, ProjectionRule::make(n, 12).residual(12));
    long mismatches = 0, checked = 0;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c)
                for (int k = 1; k <= 6; ++k) {
                    std::vector<int> w{a, b, c};
                    auto fast = multiplicities(w, k);
                    for (int n = 0; n <= (a + b + c) * k + 2; ++n) {
                        std::uint64_t m = n < static_cast<int>(fast.size()) ? fast[n] : 0;
                        if (m != multiplicity_by_weights(w, k, n) || m != multiplicity_by_characters(w, k, n))
                            ++mismatches;
                        ++checked;
                    }
                }
    Outcome o;
    o.pass = orth < 1e-10 && proj < 1e-8 && mismatches == 0;
    o.detail = "character orthonormality " + num(orth, 3) + ", projector residual " + num(proj, 3) +
               ", multiplicity mismatches " + std::to_string(mismatches) + "/" + std::to_string(checked);
    return o;
}

Outcome dimension_theorem() {
    auto a = run(cmd_dims, two_spheres("c2_two"));
    auto c3 = three_spheres("c2_three");
    auto b = run(cmd_dims, c3);
    auto part = [](const json& s) {
        if (s.contains("error")) return std::string("error: ") + s["error"].get<std::string>();
        return "exponent " + num(s["fit"]["exponent"].get<double>()) + " (target " +
               num(s["expected_exponent"].get<double>()) + " +- " + num(s["exponent_tolerance"].get<double>()) +
               "), top-half spread " + num(s["top_half_ratio_spread"].get<double>(), 3) + ", scale " +
               num(s["calibration"]["scale_used"].get<double>()) + ", C_vol " +
               num(s["normalization"]["volume_constant_weyl"].get<double>());
    };
    Outcome o;
    o.pass = a["pass"].get<bool>() && b["pass"].get<bool>();
    o.detail = "(1,2): " + part(a) + "; (1,1,3): " + part(b);
    return o;
}

Outcome diagonal_theorem() {
    auto c = two_spheres("c3");
    c.k_min = 16;
    c.k_max = 60;
    auto s = run(cmd_kernel, c);
    Outcome o;
    o.pass = verdict(s, "diagonal_exponent") && verdict(s, "diagonal_ratio");
    o.detail = "exponent " + num(s["fit"]["exponent"].get<double>()) + " (target 1.5 +- 0.1), ratio at k=60 " +
               num(s["ratio_top"].get<double>());
    return o;
}

Outcome rapid_decay() {
    auto c = two_spheres("c4_two");
    c.k_min = 16;
    c.k_max = 60;
    auto a = run(cmd_kernel, c);
    auto t = three_spheres("c4_three");
    t.k_min = 10;
    t.has_pair = true;
    t.pair_x = {{"kind", "bending"}, {"diagonal", 0.98}, {"bend", 0.0}};
    t.pair_y = {{"kind", "bending"}, {"diagonal", 0.55}, {"bend", kPi}};
    auto b = run(cmd_kernel, t);
    Outcome o;
    o.pass = verdict(a, "off_locus_decay") && verdict(a, "on_locus_control") && verdict(b, "off_orbit_pair");
    o.detail = "off-locus largest decreasing order " + std::to_string(a["off_locus"]["largest_order"].get<int>()) +
               ", on-locus control verdict " + a["on_locus_control"]["verdict"].get<std::string>() +
               ", off-orbit pair ratio at k=" + std::to_string(b["pair"]["tail_start_k"].get<int>()) + ".." +
               std::to_string(t.pair_k_max) + " below k^-3: " + (verdict(b, "off_orbit_pair") ? "yes" : "no") +
               " (last " + num(b["pair"]["last_ratio"].get<double>(), 3) + ")";
    return o;
}

Outcome stationary_phase_chain() {
    auto s = run(cmd_oscillatory, two_spheres("c5"));
    Outcome o;
    o.pass = verdict(s, "gaussian_J") && verdict(s, "inner_scaling") && verdict(s, "chain_ratio") &&
             verdict(s, "radial_identity");
    std::string ratios;
    for (const auto& r : s["inner_integral"]["step_ratios"]) ratios += (ratios.empty() ? "" : ", ") + num(r.get<double>());
    o.detail = std::string("J ") + (verdict(s, "gaussian_J") ? "ok" : "bad") + ", I_k deviation ratios per 4x k [" +
               ratios + "] (target 0.5 +- 0.15), chain ratio at k=1e4 " + num(s["chain"]["ratio"].get<double>(), 6) +
               ", radial identity " + (verdict(s, "radial_identity") ? "ok" : "bad");
    return o;
}

Outcome geometry_lemmas() {
    auto a = run(cmd_loci, two_spheres("c6_two"));
    auto b = run(cmd_loci, three_spheres("c6_three"));
    Outcome o;
    o.pass = a["pass"].get<bool>() && b["pass"].get<bool>();
    double orth = std::max(a["max_orthogonality_residual"].get<double>(), b["max_orthogonality_residual"].get<double>());
    double eq = std::max(a["max_equivariance_residual"].get<double>(), b["max_equivariance_residual"].get<double>());
    double out = std::min(a["min_outward_derivative"].get<double>(), b["min_outward_derivative"].get<double>());
    o.detail = "orthogonality " + num(orth, 3) + ", min d lambda(Upsilon) " + num(out) + ", equivariance " +
               num(eq, 3) + ", D_GT * pi - 1 = " + num(a["d_gt"].get<double>() * kPi - 1.0, 3);
    return o;
}

Outcome kernel_bound() {
    auto c = two_spheres("c7_two");
    c.k_min = 10;
    auto a = run(cmd_kernel, c);
    auto t = three_spheres("c7_three");
    t.k_min = 10;
    auto b = run(cmd_kernel, t);
    Outcome o;
    o.pass = verdict(a, "kernel_bound") && verdict(b, "kernel_bound");
    o.detail = "max of Pi(x,x) / 3(k/pi)^d: (1,2) " + num(a["kernel_bound_max_fraction"].get<double>(), 3) +
               ", (1,1,3) " + num(b["kernel_bound_max_fraction"].get<double>(), 3);
    return o;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
    return out;
}

Outcome determinism() {
    std::vector<std::pair<std::string, std::function<int(const ExperimentConfig&)>>> cmds = {
        {"dims", cmd_dims}, {"kernel", cmd_kernel}, {"loci", cmd_loci}, {"calibrate", cmd_calibrate}};
    int files = 0, differing = 0;
    for (const auto& [name, fn] : cmds) {
        auto c = two_spheres("c8_" + name);
        c.threads = 4;
        fn(c);
        auto first = snapshot(c.output_dir);
        fn(c);
        auto second = snapshot(c.output_dir);
        for (const auto& [f, bytes] : first) {
            ++files;
            if (!second.count(f) || second[f] != bytes) ++differing;
        }
    }
    Outcome o;
    o.pass = differing == 0 && files > 0;
    o.detail = std::to_string(files) + " output files compared across reruns, " + std::to_string(differing) + " differ";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    std::string work = g_work.string();
    app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
    app.add_option("--work", work, "Scratch directory");
    CLI11_PARSE(app, argc, argv);
    g_work = work;
    fs::create_directories(g_work);

    const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
        {"representation core", representation_core},
        {"dimension growth", dimension_theorem},
        {"diagonal growth", diagonal_theorem},
        {"rapid decay", rapid_decay},
        {"stationary phase chain", stationary_phase_chain},
        {"geometry lemmas", geometry_lemmas},
        {"kernel bound", kernel_bound},
        {"determinism", determinism},
    };
    bool all = true;
    for (int i = 0; i < static_cast<int>(criteria.size()); ++i) {
        if (only && only != i + 1) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "C" << i + 1 << " " << criteria[i].first << ": "
                  << o.detail << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
