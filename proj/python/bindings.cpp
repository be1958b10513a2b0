#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "ccl/arith.hpp"
#include "ccl/bessel.hpp"
#include "ccl/circle.hpp"
#include "ccl/cli.hpp"
#include "ccl/coeffs.hpp"
#include "ccl/errors.hpp"
#include "ccl/report.hpp"
#include "ccl/spectral.hpp"
#include "ccl/version.hpp"
#include "ccl/windows.hpp"

namespace py = pybind11;

namespace {

// Exact coefficients cross the boundary as decimal strings; Python turns them into ints.
std::vector<std::string> coefficient_strings(int weight, std::size_t upto) {
  auto form = ccl::make_eigenform(weight, upto);
  std::vector<std::string> out;
  out.reserve(form.a.size());
  for (const auto& c : form.a.coefficients()) out.push_back(c.get_str());
  return out;
}

py::dict cover_summary(double Q, double delta) {
  auto bump = ccl::SmoothWindow::bump();
  auto cover = ccl::build_cover([&bump](double x) { return bump(x); }, Q, delta);
  py::dict d;
  d["Q"] = Q;
  d["delta"] = cover.delta();
  d["Lambda"] = cover.Lambda();
  d["intervals"] = cover.interval_count();
  d["l2_error"] = cover.l2_error();
  d["mass"] = cover.mass();
  d["bound_ratio"] = ccl::l2_bound_ratio(cover);
  return d;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = ccl::parse_and_dispatch(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

std::string correlate_json(const std::string& kind, const std::string& config) {
  ccl::Json parsed;
  try {
    parsed = config.empty() ? ccl::Json::object() : ccl::Json::parse(config);
  } catch (const ccl::Json::exception& e) {
    throw ccl::ContractError(std::string("correlate: config is not valid JSON: ") + e.what());
  }
  py::gil_scoped_release release;
  return ccl::to_json(ccl::run_correlate(kind, parsed));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = ccl::kVersion;
  py::register_exception<ccl::ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ccl::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("_coefficient_strings", &coefficient_strings, py::arg("weight"), py::arg("upto"));
  m.def("eigenvalues", &ccl::eigenvalue_table, py::arg("weight"), py::arg("upto"));
  m.def("kloosterman", &ccl::kloosterman, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("weil_bound", &ccl::weil_bound, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("ramanujan_sum", &ccl::ramanujan_sum, py::arg("c"), py::arg("n"));
  m.def("bessel_j", &ccl::bessel_j, py::arg("nu"), py::arg("x"));
  m.def(
      "w_star",
      [](int kappa, double z, double w) { return ccl::w_star(ccl::SmoothWindow::bump(), kappa, z, w); },
      py::arg("kappa"), py::arg("z"), py::arg("w"));
  m.def("cover", &cover_summary, py::arg("Q"), py::arg("delta"));
  m.def(
      "petersson",
      [](int k, std::int64_t mm, std::int64_t n, std::int64_t c_max) {
        auto v = ccl::petersson_geometric(k, mm, n, c_max);
        return py::make_tuple(v.value, v.tail_bound);
      },
      py::arg("weight"), py::arg("m"), py::arg("n"), py::arg("c_max") = 1000);
  m.def("_correlate_json", &correlate_json, py::arg("kind"), py::arg("config"));
  m.def("run_cli", &run_cli, py::arg("args"));
}
