#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "sicbell/graph_bounds.hpp"
#include "sicbell/montecarlo.hpp"
#include "sicbell/noise_models.hpp"
#include "sicbell/quantum_core.hpp"
#include "sicbell/serialization.hpp"
#include "sicbell/sic_catalog.hpp"

namespace py = pybind11;
using namespace sicbell;

namespace {

py::object to_python(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

json from_python(const py::object& obj) {
    return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

// Weights may be ints, strings like "3/2" or fractions.Fraction.
WeightedGraph make_graph(const std::vector<py::object>& weights,
                         const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<Rational> w;
    for (const auto& x : weights) {
        w.push_back(Rational::parse(py::str(x).cast<std::string>()));
    }
    return WeightedGraph(std::move(w), edges);
}

std::vector<std::pair<std::size_t, std::size_t>> edge_list(const SicSet& set) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : orthogonality_graph(set).edges()) out.emplace_back(e.u, e.v);
    return out;
}

NoisyModel model_for(const SicSet& set, double visibility, double crosstalk) {
    NoiseConfig cfg;
    cfg.visibility = visibility;
    cfg.crosstalk = crosstalk;
    return apply_noise(set, cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bell inequalities built from state-independent contextuality sets";

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<SicSet>(m, "SicSet")
        .def_readonly("name", &SicSet::name)
        .def_readonly("dimension", &SicSet::dimension)
        .def_readonly("contexts", &SicSet::contexts)
        .def_readonly("labels", &SicSet::labels)
        .def_property_readonly("size", &SicSet::size)
        .def_property_readonly("weights",
                               [](const SicSet& s) {
                                   std::vector<std::string> out;
                                   for (const auto& w : s.weights) out.push_back(w.to_string());
                                   return out;
                               })
        .def_property_readonly("vectors",
                               [](const SicSet& s) {
                                   std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> out;
                                   for (const auto& v : s.vectors) {
                                       auto& row = out.emplace_back();
                                       for (const auto& z : v) row.emplace_back(z.real_part(), z.omega_part());
                                   }
                                   return out;
                               })
        .def("to_json", [](const SicSet& s) { return to_python(set_to_json(s)); })
        .def_static("from_json", [](const py::object& doc) { return set_from_json(from_python(doc)); })
        .def("__repr__", [](const SicSet& s) {
            return "<SicSet " + s.name + ": " + std::to_string(s.size()) + " vectors, d=" +
                   std::to_string(s.dimension) + ">";
        });

    m.def("catalog_names", &catalog_names);
    m.def("catalog_set", [](const std::string& name) { return catalog_set(name); }, py::arg("name"));
    m.def("load_set", [](const std::string& path) { return load_set_file(path); }, py::arg("path"));
    m.def("edges", &edge_list, py::arg("set"), "orthogonality edges as (u, v) pairs, u < v");
    m.def(
        "verify_set",
        [](const SicSet& set) {
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const auto& c : verify_set(set).checks) out.emplace_back(c.name, c.passed, c.detail);
            return out;
        },
        py::arg("set"));
    m.def(
        "ks_colorable", [](const SicSet& set) { return ks_colorable(orthogonality_graph(set), set.contexts).colorable; },
        py::arg("set"));

    m.def("bounds", [](const SicSet& set) { return to_python(to_json(bounds_report(set))); }, py::arg("set"));
    m.def(
        "independence_number",
        [](const std::vector<py::object>& weights, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
            const auto r = max_weight_independent_set(make_graph(weights, edges));
            return py::make_tuple(r.weight.to_string(), r.vertices);
        },
        py::arg("weights"), py::arg("edges"));
    m.def(
        "lovasz_theta",
        [](const std::vector<py::object>& weights, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
           double tolerance) {
            ThetaOptions opt;
            opt.tolerance = tolerance;
            return lovasz_theta(make_graph(weights, edges), opt).value;
        },
        py::arg("weights"), py::arg("edges"), py::arg("tolerance") = 1e-9);

    m.def(
        "bell_value",
        [](const SicSet& set, double visibility, double crosstalk) {
            const auto model = model_for(set, visibility, crosstalk);
            return bell_value(set, model.state, model.measurements).beta;
        },
        py::arg("set"), py::arg("visibility") = 1.0, py::arg("crosstalk") = 0.0);
    m.def(
        "probabilities",
        [](const SicSet& set, double visibility, double crosstalk) {
            const auto model = model_for(set, visibility, crosstalk);
            const auto table = bell_value(set, model.state, model.measurements).table;
            std::vector<std::tuple<std::size_t, std::size_t, double>> out;
            for (std::size_t k = 0; k < table.settings.size(); ++k) {
                out.emplace_back(table.settings[k].alice, table.settings[k].bob, table.values[k]);
            }
            return out;
        },
        py::arg("set"), py::arg("visibility") = 1.0, py::arg("crosstalk") = 0.0);
    m.def("fit_visibility", &fit_visibility, py::arg("target_beta"), py::arg("set"));

    m.def(
        "spiral_spectrum", [](double width, const std::vector<int>& modes) { return spiral_spectrum(width, modes).amplitudes; },
        py::arg("width"), py::arg("modes"));
    m.def(
        "procrustean_filter",
        [](const std::vector<double>& amplitudes) {
            std::vector<int> modes(amplitudes.size());
            for (std::size_t k = 0; k < modes.size(); ++k) modes[k] = static_cast<int>(k);
            const auto r = procrustean_filter(SchmidtSpectrum{modes, amplitudes});
            return py::make_tuple(r.spectrum.amplitudes, r.transmissions, r.success_probability);
        },
        py::arg("amplitudes"));

    m.def(
        "simulate",
        [](const py::object& config) {
            std::vector<std::string> errors;
            const auto cfg = cli::parse_run_config(config.is_none() ? json::object() : from_python(config), errors);
            if (!errors.empty()) {
                std::string msg = "invalid config:";
                for (const auto& e : errors) msg += "\n  - " + e;
                throw py::value_error(msg);
            }
            return to_python(cli::simulation_to_json(cli::run_simulation(cfg)));
        },
        py::arg("config") = py::none(), "run the Monte Carlo pipeline for a config dict");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "run the command-line front end; returns (exit_code, stdout, stderr)");
}
