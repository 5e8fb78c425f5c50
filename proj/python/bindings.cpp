#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "histospline/error.hpp"
#include "histospline/eval.hpp"
#include "histospline/fixtures.hpp"
#include "histospline/io.hpp"
#include "histospline/shape.hpp"
#include "histospline/spline.hpp"
#include "histospline/verify.hpp"

namespace py = pybind11;
using namespace histospline;

namespace {

Histogram make_histogram(std::vector<double> knots, std::vector<double> averages) {
  return Histogram(Partition(std::move(knots)), std::move(averages));
}

BoundaryMode boundary_mode(const std::optional<std::pair<double, double>>& clamp) {
  if (clamp) return ClampedBoundary{clamp->first, clamp->second};
  return FormulaBoundary{};
}

template <class F>
py::object map_points(const SplineC1& s, const py::object& x, F f) {
  if (py::isinstance<py::float_>(x) || py::isinstance<py::int_>(x)) return py::float_(f(s, x.cast<double>()));
  std::vector<double> out;
  for (double v : x.cast<std::vector<double>>()) out.push_back(f(s, v));
  return py::cast(out);
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C1 shape-preserving cubic splines from histogram cell averages";

  static py::exception<Error> error(m, "HistosplineError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<SplineC1>(m, "Spline")
      .def(py::init([](std::vector<double> knots, std::vector<double> values, std::vector<double> slopes,
                       double alpha) { return SplineC1(Partition(std::move(knots)), values, slopes, alpha); }),
           py::arg("knots"), py::arg("values"), py::arg("slopes"), py::arg("alpha") = 0.5)
      .def_property_readonly("knots", [](const SplineC1& s) {
        auto k = s.partition().knots();
        return std::vector<double>(k.begin(), k.end());
      })
      .def_property_readonly("values", [](const SplineC1& s) {
        return std::vector<double>(s.values().begin(), s.values().end());
      })
      .def_property_readonly("slopes", [](const SplineC1& s) {
        return std::vector<double>(s.slopes().begin(), s.slopes().end());
      })
      .def_property_readonly("alpha", &SplineC1::alpha)
      .def_property_readonly("cells", &SplineC1::cells)
      .def("value", [](const SplineC1& s, py::object x) { return map_points(s, x, value); })
      .def("deriv1", [](const SplineC1& s, py::object x) { return map_points(s, x, deriv1); })
      .def("deriv2", [](const SplineC1& s, py::object x) { return map_points(s, x, deriv2); })
      .def("cell_integral", [](const SplineC1& s, std::size_t i) { return cell_integral(s, i); },
           "Integral over cell i = 1..k.")
      .def("second_derivative_jumps", [](const SplineC1& s) { return second_derivative_jumps(s); })
      .def("to_json", [](const SplineC1& s) { return io::spline_to_json(s).dump(); })
      .def("__repr__", [](const SplineC1& s) {
        return "<Spline cells=" + std::to_string(s.cells()) + " alpha=" + io::format_double(s.alpha()) + ">";
      });

  m.def(
      "fit",
      [](std::vector<double> knots, std::vector<double> averages, double alpha,
         std::optional<std::pair<double, double>> clamp) {
        return fit(make_histogram(std::move(knots), std::move(averages)), AlphaParam(alpha), boundary_mode(clamp));
      },
      py::arg("knots"), py::arg("averages"), py::arg("alpha") = 0.5, py::arg("clamp") = py::none(),
      "Standard fit; `clamp=(S0, Sk)` prescribes the end values.");

  m.def(
      "fit_fallback",
      [](std::vector<double> knots, std::vector<double> averages, double alpha) {
        const FallbackFit f = fit_fallback(make_histogram(std::move(knots), std::move(averages)), AlphaParam(alpha));
        py::dict report;
        report["knot_discrepancy"] = f.report.knot_discrepancy;
        report["integral_residual"] = f.report.integral_residual;
        return py::make_tuple(f.spline, report);
      },
      py::arg("knots"), py::arg("averages"), py::arg("alpha") = 0.5);

  m.def(
      "boundary_values",
      [](std::vector<double> knots, std::vector<double> averages, double alpha) {
        const BoundaryValues b = boundary_values(make_histogram(std::move(knots), std::move(averages)), AlphaParam(alpha));
        return py::make_tuple(b.s0, b.sk);
      },
      py::arg("knots"), py::arg("averages"), py::arg("alpha") = 0.5);

  m.def(
      "certify",
      [](const SplineC1& s, std::vector<double> averages, std::size_t samples_per_cell) {
        const auto k = s.partition().knots();
        const Histogram h = make_histogram(std::vector<double>(k.begin(), k.end()), std::move(averages));
        return json_to_py(io::report_to_json(certify(s, h, {samples_per_cell, 1e-12, 1e-12})));
      },
      py::arg("spline"), py::arg("averages"), py::arg("samples_per_cell") = 1000);

  m.def(
      "slope_sensitivity",
      [](const SplineC1& s, std::vector<double> averages) {
        const auto k = s.partition().knots();
        return slope_sensitivity(s, make_histogram(std::vector<double>(k.begin(), k.end()), std::move(averages)));
      },
      py::arg("spline"), py::arg("averages"));

  m.def(
      "feasible_intervals",
      [](std::vector<double> knots, std::vector<double> averages) {
        const FeasibleIntervals fi = feasible_intervals(make_histogram(std::move(knots), std::move(averages)));
        auto pairs = [](const std::vector<Interval>& v) {
          std::vector<std::pair<double, double>> out;
          for (const auto& iv : v) out.emplace_back(iv.lower, iv.upper);
          return out;
        };
        return py::make_tuple(pairs(fi.slopes), pairs(fi.values));
      },
      py::arg("knots"), py::arg("averages"));

  m.def("fixture_names", &fixture_names);
  m.def(
      "fixture",
      [](const std::string& name) {
        const Fixture f = get_fixture(name);
        auto k = f.histogram.partition().knots();
        auto a = f.histogram.averages();
        return py::make_tuple(std::vector<double>(k.begin(), k.end()), std::vector<double>(a.begin(), a.end()));
      },
      py::arg("name"), "(knots, averages) of a built-in dataset.");

  m.def(
      "convergence",
      [](const std::string& function, double alpha, const std::string& mesh, std::vector<std::size_t> ks) {
        verify::TestFunction f;
        if (function == "exp") f = verify::exp_function();
        else if (function == "sinlin") f = verify::sinlin_function();
        else if (function == "affine") f = verify::affine_function();
        else throw Error(ErrorCode::InvalidArgument, "unknown function '" + function + "'");
        const auto kind = mesh == "graded" ? verify::MeshKind::smooth_graded : verify::MeshKind::uniform;
        const auto st = verify::convergence_study(f, AlphaParam(alpha), kind, ks);
        auto est = [](const verify::OrderEstimate& e) -> py::object {
          return e.order ? py::object(py::float_(*e.order)) : py::object(py::none());
        };
        py::dict out;
        out["value"] = est(st.value);
        out["slope"] = est(st.slope);
        out["jump"] = est(st.jump);
        out["csv"] = io::convergence_to_csv(st);
        return out;
      },
      py::arg("function") = "exp", py::arg("alpha") = 0.5, py::arg("mesh") = "uniform",
      py::arg("ks") = std::vector<std::size_t>{10, 20, 40, 80, 160});
}
