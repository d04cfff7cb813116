#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chebsie/chebyshev.hpp"
#include "chebsie/config.hpp"
#include "chebsie/coordinate_oracle.hpp"
#include "chebsie/errors.hpp"
#include "chebsie/momentum_solver.hpp"
#include "chebsie/runner.hpp"

namespace py = pybind11;
using namespace chebsie;

namespace {

PotentialParams make_params(int ell, double alpha, double s, bool linear, bool coulomb,
                            const std::string& kinetic, double am1, double am2) {
  PotentialParams p;
  p.ell = ell;
  p.alpha = alpha;
  p.s = s;
  p.include_linear = linear;
  p.include_coulomb = coulomb;
  p.kinetic = parse_kinetic_mode(kinetic);
  p.am1 = am1;
  p.am2 = am2;
  return p;
}

}  // namespace

PYBIND11_MODULE(_chebsie, m) {
  m.doc() = "Chebyshev momentum-space solver for Coulomb plus linear bound states";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("chebyshev_nodes", &chebyshev_nodes, py::arg("n"));
  m.def("chebyshev_t", &chebyshev_t, py::arg("n"), py::arg("t"));

  py::class_<ChebGrid, std::shared_ptr<ChebGrid>>(m, "ChebGrid")
      .def(py::init<int>(), py::arg("order"))
      .def_property_readonly("order", &ChebGrid::order)
      .def_property_readonly("nodes", [](const ChebGrid& g) {
        return std::vector<double>(g.nodes().begin(), g.nodes().end());
      })
      .def_property_readonly("plain_weights", [](const ChebGrid& g) {
        return std::vector<double>(g.plain_weights().begin(), g.plain_weights().end());
      })
      .def_property_readonly("diff_matrix", &ChebGrid::diff_matrix)
      .def("cardinal", &ChebGrid::cardinal, py::arg("j"), py::arg("t"))
      .def("interpolate", [](const ChebGrid& g, const std::vector<double>& v, double t) {
        return g.interpolate(v, t);
      }, py::arg("values"), py::arg("t"))
      .def("cauchy_weights", [](const ChebGrid& g, double tau) { return g.cauchy_weights(tau).values; },
           py::arg("tau"))
      .def("log_weights", [](const ChebGrid& g, double tau) { return g.log_weights(tau).values; },
           py::arg("tau"));

  py::class_<BoundLevel>(m, "BoundLevel")
      .def_readonly("ell", &BoundLevel::ell)
      .def_readonly("n", &BoundLevel::n)
      .def_readonly("epsilon", &BoundLevel::epsilon)
      .def_readonly("mesh_values", &BoundLevel::mesh_values)
      .def_readonly("residual_norm", &BoundLevel::residual_norm)
      .def_readonly("imag_part", &BoundLevel::imag_part)
      .def("__repr__", [](const BoundLevel& l) {
        return "BoundLevel(ell=" + std::to_string(l.ell) + ", n=" + std::to_string(l.n) +
               ", epsilon=" + std::to_string(l.epsilon) + ")";
      });

  m.def(
      "solve_levels",
      [](int ell, double alpha, double s, bool linear, bool coulomb, int N, double sigma,
         const std::string& mapping, int count, const std::string& kinetic, double am1, double am2) {
        const auto p = make_params(ell, alpha, s, linear, coulomb, kinetic, am1, am2);
        py::gil_scoped_release release;
        auto r = solve_levels(p, N, {parse_mapping_kind(mapping), sigma}, count);
        return std::make_pair(std::move(r.selection.levels), r.selection.partial);
      },
      py::arg("ell") = 0, py::arg("alpha") = 0.0, py::arg("s") = 1.0, py::arg("linear") = true,
      py::arg("coulomb") = true, py::arg("N") = 100, py::arg("sigma") = 1.0,
      py::arg("mapping") = "rational", py::arg("count") = 5, py::arg("kinetic") = "nonrelativistic",
      py::arg("am1") = 0.0, py::arg("am2") = 0.0,
      "Bound levels and a flag set when fewer than count passed the filters.");

  m.def(
      "solve_radial",
      [](int ell, double alpha, double slope, double mu_a, int level) {
        RadialProblem p;
        p.ell = ell;
        p.alpha = alpha;
        p.slope = slope;
        p.mu_a = mu_a;
        p.level = level;
        return solve_radial(p).epsilon;
      },
      py::arg("ell") = 0, py::arg("alpha") = 0.0, py::arg("slope") = 1.0, py::arg("mu_a") = 0.5,
      py::arg("level") = 0);
  m.def("hydrogen_energy", &hydrogen_energy, py::arg("n"), py::arg("ell"), py::arg("alpha"),
        py::arg("mu_a"));
  m.def("airy_reference", &airy_reference, py::arg("nu"));

  m.def(
      "run",
      [](const std::string& config_text) {
        const auto config = parse_config(config_text);
        Report report;
        {
          py::gil_scoped_release release;
          report = run(config);
        }
        return to_json(report);
      },
      py::arg("config_text"), "Runs a config document and returns the report as JSON text.");
}
