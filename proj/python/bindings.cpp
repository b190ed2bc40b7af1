#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ep2/analysis.hpp"
#include "ep2/continuum.hpp"
#include "ep2/errors.hpp"
#include "ep2/model.hpp"
#include "ep2/solvers.hpp"

namespace py = pybind11;
using namespace ep2;

namespace {

GridFunction grid(const std::vector<double>& v) { return GridFunction(v); }

py::dict condition_dict(const ConditionReport& r) {
  py::dict details;
  for (const auto& [k, v] : r.details) details[py::str(k)] = v;
  py::dict d;
  d["condition_id"] = to_string(r.id);
  d["holds"] = r.holds;
  d["strict"] = r.strict;
  d["margin"] = r.margin;
  d["details"] = details;
  return d;
}

}  // namespace

PYBIND11_MODULE(ep2py, m) {
  m.doc() = "Discrete Ermakov-Painleve II boundary value problems";

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", domain_error.ptr());

  py::class_<Parameters>(m, "Parameters")
      .def(py::init([](double a, double b, double c, int n) {
             Parameters p{a, b, c, n};
             p.validate();
             return p;
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("N"))
      .def_readwrite("a", &Parameters::a)
      .def_readwrite("b", &Parameters::b)
      .def_readwrite("c", &Parameters::c)
      .def_readwrite("N", &Parameters::n)
      .def("__repr__", [](const Parameters& p) {
        return "Parameters(a=" + std::to_string(p.a) + ", b=" + std::to_string(p.b) +
               ", c=" + std::to_string(p.c) + ", N=" + std::to_string(p.n) + ")";
      });

  py::class_<RobinFunction>(m, "RobinFunction")
      .def(py::init([](const std::vector<std::pair<double, int>>& terms) {
             std::vector<RobinTerm> t;
             for (const auto& [coeff, e] : terms) t.push_back({coeff, e});
             return RobinFunction(std::move(t));
           }),
           py::arg("terms"))
      .def_static("affine", [](double p0, double p1) { return RobinFunction::affine(p0, p1); })
      .def("__call__", &RobinFunction::operator());

  py::class_<BoundarySpec>(m, "BoundarySpec")
      .def_static("dirichlet", &BoundarySpec::dirichlet, py::arg("D0"), py::arg("DN"))
      .def_static("robin", &BoundarySpec::robin, py::arg("f0"), py::arg("fN"))
      .def_property_readonly("is_dirichlet", &BoundarySpec::is_dirichlet);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tol_residual", &SolverConfig::tol_residual)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("homotopy_initial_step", &SolverConfig::homotopy_initial_step)
      .def_readwrite("homotopy_min_step", &SolverConfig::homotopy_min_step)
      .def_readwrite("positivity_fraction", &SolverConfig::positivity_fraction);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("success", &SolveReport::success)
      .def_readonly("message", &SolveReport::message)
      .def_property_readonly("method", [](const SolveReport& r) { return to_string(r.method); })
      .def_property_readonly("solution", [](const SolveReport& r) { return r.solution.vector(); })
      .def_readonly("residual_inf", &SolveReport::residual_inf)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("c_reached", &SolveReport::c_reached)
      .def_property_readonly("bounds", [](const SolveReport& r) -> py::object {
        if (!r.bounds_used) return py::none();
        return py::make_tuple(r.bounds_used->lower.vector(), r.bounds_used->upper.vector());
      });

  m.def("residual", [](const Parameters& p, const BoundarySpec& bc, const std::vector<double>& u) {
    return residual(p, bc, grid(u));
  });
  m.def("residual_inf", [](const Parameters& p, const BoundarySpec& bc, const std::vector<double>& u) {
    return residual_inf(p, bc, grid(u));
  });
  m.def("functional_value", [](const Parameters& p, const BoundarySpec& bc, const std::vector<double>& u) {
    return functional_value(p, bc, grid(u));
  });
  m.def("functional_gradient", [](const Parameters& p, const BoundarySpec& bc, const std::vector<double>& u) {
    return functional_gradient(p, bc, grid(u));
  });

  m.def(
      "solve",
      [](const Parameters& p, const BoundarySpec& bc, const std::string& method, const SolverConfig& cfg) {
        py::gil_scoped_release release;
        return method == "auto" ? solve_auto(p, bc, cfg) : solve_with(method_from_string(method), p, bc, cfg);
      },
      py::arg("params"), py::arg("boundary"), py::arg("method") = "auto", py::arg("config") = SolverConfig{});
  m.def(
      "newton_solve",
      [](const Parameters& p, const BoundarySpec& bc, const std::vector<double>& u0, const SolverConfig& cfg) {
        py::gil_scoped_release release;
        return newton_solve(p, bc, grid(u0), cfg);
      },
      py::arg("params"), py::arg("boundary"), py::arg("u0"), py::arg("config") = SolverConfig{});
  m.def("build_bounds", [](const Parameters& p, const BoundarySpec& bc) {
    const auto b = build_bounds(p, bc);
    return py::make_tuple(b.lower.vector(), b.upper.vector());
  });

  m.def("conditions", [](const Parameters& p, const BoundarySpec& bc) {
    py::list out;
    for (const auto& r : applicable_conditions(p, bc)) out.append(condition_dict(r));
    return out;
  });
  m.def("beta_of_b", &beta_of_b);
  m.def("b_star", py::overload_cast<const Parameters&, const BoundarySpec&>(&b_star));
  m.def("c_star", &c_star);
  m.def("interval_Ic", [](const Parameters& p) {
    const auto iv = interval_Ic(p);
    return py::make_tuple(iv.lo, iv.hi);
  });

  m.def(
      "enumerate_solutions",
      [](const Parameters& p, const BoundarySpec& bc, double t_min, double t_max, double resolution) {
        EnumerationResult res;
        {
          py::gil_scoped_release release;
          res = enumerate_solutions(p, bc, {t_min, t_max, resolution});
        }
        py::list out;
        for (const auto& s : res.solutions) out.append(s.solution.vector());
        return out;
      },
      py::arg("params"), py::arg("boundary"), py::arg("t_min") = 1e-4, py::arg("t_max") = 10.0,
      py::arg("resolution") = 1e-3);

  m.def(
      "convergence_study",
      [](double A, double B, double C, double y0, double y1, const std::vector<int>& ns) {
        const auto st = convergence_study({A, B, C, y0, y1}, ns);
        py::list rows;
        for (const auto& r : st.rows) {
          rows.append(py::make_tuple(r.n, r.sup_diff ? py::cast(*r.sup_diff) : py::none(),
                                     r.ratio ? py::cast(*r.ratio) : py::none()));
        }
        return rows;
      },
      py::arg("A"), py::arg("B"), py::arg("C"), py::arg("y0"), py::arg("y1"), py::arg("Ns"));
}
