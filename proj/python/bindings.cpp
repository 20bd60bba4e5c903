#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>

#include "mrl/csv.hpp"
#include "mrl/expansion.hpp"
#include "mrl/model.hpp"
#include "mrl/oracle.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mean residual life of hazard-specified lifetime distributions: "
            "jet arithmetic, a quadrature oracle, and the operator-recursion "
            "asymptotic expansion.";

  py::class_<mrl::Jet>(m, "Jet")
      .def(py::init<double, std::vector<double>>(), py::arg("center"), py::arg("coeffs"))
      .def_static("variable", &mrl::Jet::variable, py::arg("t0"), py::arg("order"))
      .def_static("constant", &mrl::Jet::constant, py::arg("value"), py::arg("order"),
                  py::arg("center") = 0.0)
      .def_property_readonly("center", &mrl::Jet::center)
      .def_property_readonly("order", &mrl::Jet::order)
      .def_property_readonly("coeffs", &mrl::Jet::coeffs)
      .def("value", &mrl::Jet::value)
      .def("derivative", &mrl::Jet::derivative, py::arg("k"),
           "k-th derivative value at the center, k! * coeffs[k]")
      .def("truncated", &mrl::Jet::truncated, py::arg("order"))
      .def("__add__", [](const mrl::Jet& a, const mrl::Jet& b) { return a + b; })
      .def("__mul__", [](const mrl::Jet& a, const mrl::Jet& b) { return a * b; })
      .def("__repr__", [](const mrl::Jet& jet) {
        std::string out = "Jet(center=" + mrl::format_double(jet.center()) + ", coeffs=[";
        for (int k = 0; k <= jet.order(); ++k) {
          if (k) out += ", ";
          out += mrl::format_double(jet.coeff(k));
        }
        return out + "])";
      });
  m.def("reciprocal", &mrl::reciprocal, py::arg("jet"));
  m.def("sin_cos", &mrl::sin_cos, py::arg("jet"));
  m.def("exp", &mrl::exp, py::arg("jet"));
  m.def("pow", &mrl::pow, py::arg("jet"), py::arg("p"));
  m.def("derivative", &mrl::derivative, py::arg("jet"));

  py::class_<mrl::HazardModel>(m, "HazardModel")
      .def_property_readonly("name", &mrl::HazardModel::name)
      .def("spec", &mrl::HazardModel::spec)
      .def("hazard", &mrl::HazardModel::hazard, py::arg("t"))
      .def("hazard_jet", &mrl::HazardModel::hazard_jet, py::arg("t"), py::arg("order"))
      .def("reciprocal_hazard_jet", &mrl::HazardModel::reciprocal_hazard_jet, py::arg("t"),
           py::arg("order"))
      .def("has_closed_form_mrl", &mrl::HazardModel::has_closed_form_mrl)
      .def("mrl_closed_form", &mrl::HazardModel::mrl_closed_form, py::arg("t"))
      .def("has_closed_form_cumulative_hazard",
           &mrl::HazardModel::has_closed_form_cumulative_hazard)
      .def("cumulative_hazard_closed_form", &mrl::HazardModel::cumulative_hazard_closed_form,
           py::arg("t"))
      .def("sprime_sup_analytic", &mrl::HazardModel::sprime_sup_analytic, py::arg("t"))
      .def("hazard_floor", &mrl::HazardModel::hazard_floor, py::arg("t0"))
      .def("__repr__", [](const mrl::HazardModel& model) { return "HazardModel('" + model.spec() + "')"; });
  m.def("parse_model", &mrl::parse_model, py::arg("spec"),
        "Parse 'name:key=value,...' into a catalog model.");
  m.def("default_catalog", &mrl::default_catalog);

  py::class_<mrl::ThetaSequence>(m, "ThetaSequence")
      .def_readonly("center", &mrl::ThetaSequence::center)
      .def_readonly("order", &mrl::ThetaSequence::order)
      .def_readonly("terms", &mrl::ThetaSequence::terms)
      .def_readonly("partial_sums", &mrl::ThetaSequence::partial_sums);
  m.def("theta_terms", &mrl::theta_terms, py::arg("model"), py::arg("t"), py::arg("n"));
  m.def("theta_via_coefficients", &mrl::theta_via_coefficients, py::arg("model"), py::arg("t"),
        py::arg("k"), py::arg("cap") = mrl::kDefaultThetaTableCap);
  m.def(
      "theta_monomials",
      [](int k, int cap) {
        std::map<py::tuple, std::int64_t> out;
        for (const auto& [orders, coeff] : mrl::theta_monomials(k, cap)) {
          out[py::tuple(py::cast(orders))] = coeff;
        }
        return out;
      },
      py::arg("k"), py::arg("cap") = mrl::kDefaultThetaTableCap,
      "Integer coefficients keyed by the sorted derivative orders of each monomial.");
  m.def(
      "c_monomials",
      [](int k, int cap) {
        std::map<py::tuple, std::pair<std::int64_t, std::int64_t>> out;
        for (const auto& [orders, coeff] : mrl::c_monomials(k, cap)) {
          out[py::tuple(py::cast(orders))] = {coeff.num(), coeff.den()};
        }
        return out;
      },
      py::arg("k"), py::arg("cap") = mrl::kDefaultCTableCap,
      "Exact rational coefficients as (numerator, denominator) pairs.");
  m.def("c_value", &mrl::c_value, py::arg("model"), py::arg("t"), py::arg("k"),
        py::arg("cap") = mrl::kDefaultCTableCap);
  m.def("c_term", &mrl::c_term, py::arg("model"), py::arg("t"), py::arg("k"),
        py::arg("cap") = mrl::kDefaultCTableCap);
  m.def("theta_polynomial_text", &mrl::theta_polynomial_text, py::arg("k"),
        py::arg("cap") = mrl::kDefaultThetaTableCap);
  m.def("c_polynomial_text", &mrl::c_polynomial_text, py::arg("k"),
        py::arg("cap") = mrl::kDefaultCTableCap);
  m.def(
      "mrl_expansion",
      [](const mrl::HazardModel& model, double t, int n) {
        mrl::ExpansionResult result = mrl::mrl_expansion(model, t, n);
        return py::make_tuple(result.value, result.terms);
      },
      py::arg("model"), py::arg("t"), py::arg("n"),
      "Returns (partial_sum, ThetaSequence).");

  py::class_<mrl::QuadResult>(m, "QuadResult")
      .def_readonly("value", &mrl::QuadResult::value)
      .def_readonly("abs_error_estimate", &mrl::QuadResult::abs_error_estimate)
      .def_readonly("evaluations", &mrl::QuadResult::evaluations)
      .def_readonly("truncation_point", &mrl::QuadResult::truncation_point)
      .def("__repr__", [](const mrl::QuadResult& q) {
        return "QuadResult(value=" + mrl::format_double(q.value) +
               ", abs_error_estimate=" + mrl::format_double(q.abs_error_estimate) + ")";
      });
  m.def("cumulative_hazard", &mrl::cumulative_hazard, py::arg("model"), py::arg("t"),
        py::arg("tol") = 1e-9);
  m.def("survival", &mrl::survival, py::arg("model"), py::arg("t"), py::arg("tol") = 1e-9);
  m.def(
      "mrl_quadrature",
      [](const mrl::HazardModel& model, double t, double tol) {
        return mrl::mrl_quadrature(model, t, tol);
      },
      py::arg("model"), py::arg("t"), py::arg("tol") = 1e-9);
  m.def("de1_residual", &mrl::de1_residual, py::arg("model"), py::arg("t"), py::arg("h"),
        py::arg("tol") = 1e-9);

  py::class_<mrl::LimitDiagnostics>(m, "LimitDiagnostics")
      .def_readonly("window_lo", &mrl::LimitDiagnostics::window_lo)
      .def_readonly("window_hi", &mrl::LimitDiagnostics::window_hi)
      .def_readonly("inf_rm", &mrl::LimitDiagnostics::inf_rm)
      .def_readonly("sup_rm", &mrl::LimitDiagnostics::sup_rm)
      .def_readonly("inf_m", &mrl::LimitDiagnostics::inf_m)
      .def_readonly("sup_m", &mrl::LimitDiagnostics::sup_m)
      .def_readonly("alpha_hat", &mrl::LimitDiagnostics::alpha_hat)
      .def_readonly("beta_hat", &mrl::LimitDiagnostics::beta_hat)
      .def_readonly("lambda_hat", &mrl::LimitDiagnostics::lambda_hat)
      .def_readonly("sprime_limit_bound", &mrl::LimitDiagnostics::sprime_limit_bound)
      .def_readonly("failed_points", &mrl::LimitDiagnostics::failed_points);
  m.def("limit_diagnostics", &mrl::limit_diagnostics, py::arg("model"), py::arg("T"),
        py::arg("grid_points") = 128);
  m.def(
      "hyp1_check",
      [](const mrl::HazardModel& model, const std::vector<double>& T_list, double tol) {
        return mrl::hyp1_check(model, T_list, tol);
      },
      py::arg("model"), py::arg("T_list"), py::arg("tol") = 1e-3);

#ifdef MRL_VERSION
  m.attr("__version__") = MRL_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
