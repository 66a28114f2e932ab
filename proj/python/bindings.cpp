#include "lattice_flows/integrate.hpp"
#include "lattice_flows/io.hpp"
#include "lattice_flows/lax.hpp"
#include "lattice_flows/poisson.hpp"
#include "lattice_flows/registry.hpp"
#include "lattice_flows/rootdata.hpp"
#include "lattice_flows/suites.hpp"
#include "lattice_flows/systems.hpp"
#include "lattice_flows/transforms.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lattice_flows;

namespace {

registry::SystemParams params_for(const std::string& id, const State& s,
                                  std::optional<rootdata::Spectrum> spectrum) {
  registry::SystemParams p;
  p.chart = s.chart();
  p.spectrum = std::move(spectrum);
  if (id == "ab") p.m = s.size() - s.split();
  else if (id == "sklyanin" || id == "sklyanin-full") p.m = s.split();
  else if (id == "toda") p.n = s.chart() == Chart::qp ? s.split() : s.size() - s.split();
  else p.n = s.size();
  return p;
}

systems::LatticeSystem system_for(const std::string& id, const State& s,
                                  std::optional<rootdata::Spectrum> spectrum) {
  return registry::make_system(id, params_for(id, s, std::move(spectrum)));
}

}  // namespace

PYBIND11_MODULE(_lattice_flows, m) {
  m.doc() = "Integrable lattices: vector fields, Lax pairs, Poisson structures and maps";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::enum_<Chart>(m, "Chart")
      .value("qp", Chart::qp)
      .value("flaschka_ab", Chart::flaschka_ab)
      .value("volterra_u", Chart::volterra_u)
      .value("volterra_v", Chart::volterra_v)
      .value("c_vars", Chart::c_vars);

  py::class_<State>(m, "State")
      .def(py::init<Chart, Vec, Index>(), py::arg("chart"), py::arg("coords"), py::arg("split") = 0)
      .def_static("qp", &State::qp, py::arg("q"), py::arg("p"))
      .def_static("ab", &State::ab, py::arg("a"), py::arg("b"))
      .def_static("u", &State::volterra_u)
      .def_static("v", &State::volterra_v)
      .def_static("c", &State::c_vars)
      .def_static("from_json", [](const std::string& text) { return io::state_from_json(text); })
      .def("to_json", [](const State& s) { return io::state_to_json(s); })
      .def_property_readonly("chart", &State::chart)
      .def_property_readonly("split", &State::split)
      .def_property_readonly("coords", [](const State& s) { return Vec(s.coords()); })
      .def_property_readonly("names", &State::coordinate_names)
      .def("__len__", &State::size)
      .def("__repr__", [](const State& s) {
        return "State(" + std::string(chart_name(s.chart())) + ", " + io::state_to_json(s) + ")";
      });

  py::class_<rootdata::Spectrum>(m, "Spectrum")
      .def(py::init<Index, std::vector<RealVec>, std::vector<std::string>>(), py::arg("dimension"),
           py::arg("vectors"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("dimension", &rootdata::Spectrum::dimension)
      .def_property_readonly("vectors", &rootdata::Spectrum::vectors)
      .def("__len__", &rootdata::Spectrum::size)
      .def_static("from_json", &rootdata::Spectrum::from_json)
      .def("to_json", &rootdata::Spectrum::to_json);

  m.def("gram_matrix", &rootdata::gram_matrix);
  m.def("sklyanin_spectrum", &rootdata::sklyanin_spectrum);
  m.def("a_type_spectrum", &rootdata::a_type_spectrum);
  m.def("null_combination", &rootdata::null_combination);
  m.def("kozlov_treshchev_check", [](const rootdata::Spectrum& s) {
    const auto r = rootdata::kozlov_treshchev_check(s);
    py::list violations;
    for (const auto& v : r.violations) violations.append(py::make_tuple(v.i, v.j, v.ratio));
    py::dict out;
    out["pass"] = r.pass;
    out["violations"] = violations;
    return out;
  });

  m.def("system_ids", &registry::system_ids);
  m.def(
      "field",
      [](const std::string& id, const State& s, std::optional<rootdata::Spectrum> spectrum) {
        return system_for(id, s, std::move(spectrum)).field(s);
      },
      py::arg("system"), py::arg("state"), py::arg("spectrum") = std::nullopt,
      "Vector field of a system at a state; sizes are taken from the state.");
  m.def(
      "invariants",
      [](const std::string& id, const State& s, std::optional<rootdata::Spectrum> spectrum) {
        py::dict out;
        for (const auto& inv : system_for(id, s, std::move(spectrum)).invariants)
          out[py::str(inv.name)] = inv.evaluate(s);
        return out;
      },
      py::arg("system"), py::arg("state"), py::arg("spectrum") = std::nullopt);
  m.def(
      "simulate",
      [](const std::string& id, const State& s0, double t_end, double dt, bool adaptive, double rtol,
         double atol, std::optional<rootdata::Spectrum> spectrum) {
        const auto sys = system_for(id, s0, std::move(spectrum));
        const integrate::StepPolicy policy =
            adaptive ? integrate::StepPolicy(integrate::Adaptive{rtol, atol})
                     : integrate::StepPolicy(integrate::FixedStep{dt});
        integrate::Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = integrate::integrate(sys, s0, t_end, policy);
        }
        Mat states(static_cast<Index>(traj.states.size()), s0.size());
        for (std::size_t i = 0; i < traj.states.size(); ++i)
          states.row(static_cast<Index>(i)) = traj.states[i].coords().transpose();
        return py::make_tuple(traj.times, states);
      },
      py::arg("system"), py::arg("state"), py::arg("t_end"), py::arg("dt") = 1e-3,
      py::arg("adaptive") = false, py::arg("rtol") = 1e-10, py::arg("atol") = 1e-12,
      py::arg("spectrum") = std::nullopt,
      "Integrates from t = 0; returns (times, states) with one row per sample.");

  m.def(
      "build_lax",
      [](const std::string& kind, const State& s) {
        const auto p = lax::build_lax(lax::lax_kind_from_name(kind), s);
        return py::make_tuple(p.L, p.B, p.sign);
      },
      "Returns (L, B, sign); sign +1 means dL/dt = [B, L].");
  m.def("lax_residual", [](const std::string& kind, const State& s, const Vec& field) {
    return lax::lax_residual(lax::build_lax(lax::lax_kind_from_name(kind), s), field, s);
  });
  m.def("trace_invariant", [](const std::string& kind, const State& s, int order) {
    return lax::trace_invariant(lax::lax_kind_from_name(kind), s, order);
  });
  m.def("h2_ab", &lax::h2_ab);
  m.def("casimir_C", &lax::casimir_C);
  m.def("casimir_F", &lax::casimir_F);
  m.def("vd_hamiltonian", &lax::vd_hamiltonian);

  m.def("poisson_matrix", [](const std::string& name, const State& s) {
    return poisson::poisson_matrix(poisson::structure_from_name(name), s);
  });
  m.def("jacobi_residual", [](const std::string& name, const State& s) {
    return poisson::jacobi_residual(poisson::structure_from_name(name), s);
  });
  m.def("lenard_residual", [](const State& s) { return poisson::lenard_residual(s); });

  m.def("henon_map", &transforms::henon_map);
  m.def("moser_reduce", &transforms::moser_reduce);
  m.def("d_transform", &transforms::d_transform);
  m.def("sklyanin_flaschka", &transforms::sklyanin_flaschka);
  m.def("toda_flaschka", &transforms::toda_flaschka);
  m.def("generalized_flaschka", &transforms::generalized_flaschka);
  m.def("c_to_v", &transforms::c_to_v);

  m.def("suite_names", &suites::suite_names);
  m.def(
      "verify_json",
      [](const std::string& suite, std::optional<Index> states, std::uint64_t seed, std::optional<Index> n,
         std::optional<Index> mm, const std::string& system, const std::string& structure,
         const std::string& chart, const std::string& map) {
        suites::Options o;
        o.states = states;
        o.seed = seed;
        o.n = n;
        o.m = mm;
        o.system = system;
        o.structure = structure;
        o.chart = chart;
        o.map = map;
        py::gil_scoped_release release;
        return suites::report_json(suite, o, suites::run_suite(suite, o));
      },
      py::arg("suite"), py::arg("states") = std::nullopt, py::arg("seed") = 1, py::arg("n") = std::nullopt,
      py::arg("m") = std::nullopt, py::arg("system") = "", py::arg("structure") = "", py::arg("chart") = "",
      py::arg("map") = "");
}
