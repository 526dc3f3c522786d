#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "szego/asymptotics.hpp"
#include "szego/calibration.hpp"
#include "szego/experiment.hpp"
#include "szego/hardy.hpp"
#include "szego/oscillatory.hpp"

namespace py = pybind11;
using namespace szego;

namespace {

ManifoldPoint point_from_directions(const std::vector<std::array<double, 3>>& dirs) {
    std::vector<Vec3> u;
    for (const auto& d : dirs) u.emplace_back(d[0], d[1], d[2]);
    return ManifoldPoint::from_directions(u);
}

int run(const std::string& command, const std::string& config_json, const std::string& out) {
    ExperimentConfig cfg = parse_config(nlohmann::json::parse(config_json.empty() ? "{}" : config_json));
    if (!out.empty()) cfg.output_dir = out;
    py::gil_scoped_release release;
    if (command == "dims") return cmd_dims(cfg);
    if (command == "kernel") return cmd_kernel(cfg);
    if (command == "oscillatory") return cmd_oscillatory(cfg);
    if (command == "loci") return cmd_loci(cfg);
    if (command == "calibrate") return cmd_calibrate(cfg);
    throw py::value_error("unknown command: " + command);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Equivariant Szego kernels on products of spheres";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

    m.def("multiplicity", [](const std::vector<int>& w, int k, int n) { return multiplicity(w, k, n); },
          py::arg("weights"), py::arg("k"), py::arg("n"));
    m.def("multiplicities", &multiplicities, py::arg("weights"), py::arg("k"));
    m.def("isotype_dimension", [](const std::vector<int>& w, int k, int n) { return isotype_dimension(w, k, n); },
          py::arg("weights"), py::arg("k"), py::arg("n"));

    m.def("moment_map", [](const std::vector<int>& w, const std::vector<std::array<double, 3>>& dirs) {
        Vec3 v = moment_map(ModelManifold(w), point_from_directions(dirs));
        return std::array<double, 3>{v(0), v(1), v(2)};
    }, py::arg("weights"), py::arg("directions"));

    m.def("diagonal_kernel", [](const std::vector<int>& w, int k, int n,
                                const std::vector<std::array<double, 3>>& dirs) {
        ModelManifold M(w);
        SectionSpace S(M, k);
        return equivariant_kernel(S, isotype_basis(S, n), point_from_directions(dirs), point_from_directions(dirs)).real() /
               M.volume();
    }, py::arg("weights"), py::arg("k"), py::arg("n"), py::arg("directions"));

    m.def("calibrate", [](const std::vector<int>& w, const std::vector<std::pair<int, int>>& pairs) {
        CalibrationResult r = calibrate_convention(ModelManifold(w), pairs);
        return py::dict(py::arg("scale") = r.scale, py::arg("spread") = r.spread, py::arg("snapped") = r.snapped);
    }, py::arg("weights"), py::arg("pairs"));

    m.def("fit_power_law", [](const std::vector<double>& k, const std::vector<double>& v) {
        PowerLawFit f = fit_power_law(k, v);
        return py::dict(py::arg("exponent") = f.exponent, py::arg("constant") = f.constant,
                        py::arg("residual_rms") = f.residual_rms);
    }, py::arg("k"), py::arg("values"));

    m.def("gaussian_J", &gaussian_J, py::arg("lam"), py::arg("xi"));
    m.def("radial_moment", [](double a) { return radial_moment(a); }, py::arg("a"));
    m.def("chain_ratio", [](double k, double field_norm) {
        ModelParams p;
        p.field_norm = field_norm;
        return radial_leading_term(k, p).ratio;
    }, py::arg("k"), py::arg("field_norm"));

    m.def("run", &run, py::arg("command"), py::arg("config") = "", py::arg("out") = "",
          "Run a command with a JSON config string; returns the exit code.");
}
