// Python bindings for the most commonly scripted entry points: exact/float
// Pfaffians, Gaussian moments, measured integral constants, and a quick
// randomized identity spot check.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "grwick/covariance.hpp"
#include "grwick/gaussian.hpp"
#include "grwick/identity_suite.hpp"
#include "grwick/randgen.hpp"
#include "grwick/report.hpp"
#include "grwick/seminorm.hpp"

namespace py = pybind11;

namespace {

grwick::Covariance covariance_from_rows(
    const std::vector<std::vector<std::complex<double>>>& rows) {
  const int n = static_cast<int>(rows.size());
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n)
      throw std::invalid_argument("matrix must be square");
  grwick::Covariance c(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const auto w = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (v != -w) throw std::invalid_argument("matrix must be antisymmetric");
      c.set(i, j, grwick::Scalar::floating(v.real(), v.imag()));
    }
  for (int i = 0; i < n; ++i)
    if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] !=
        std::complex<double>(0.0, 0.0))
      throw std::invalid_argument("diagonal must vanish");
  return c;
}

std::complex<double> py_pfaffian(
    const std::vector<std::vector<std::complex<double>>>& rows) {
  std::vector<std::vector<grwick::Scalar>> m;
  for (const auto& r : rows) {
    std::vector<grwick::Scalar> row;
    for (const auto& v : r) row.push_back(grwick::Scalar::floating(v.real(), v.imag()));
    m.push_back(std::move(row));
  }
  return grwick::pfaffian(m).to_complex();
}

std::complex<double> py_moment(const std::vector<std::vector<std::complex<double>>>& rows,
                               const std::vector<int>& indices) {
  return grwick::sequence_moment(covariance_from_rows(rows), indices).to_complex();
}

double py_integral_bound(const std::vector<std::vector<std::complex<double>>>& rows) {
  return grwick::measured_integral_bound(covariance_from_rows(rows));
}

bool py_identity_spot_check(std::uint64_t seed, int dim, int count) {
  if (dim < 1 || dim > 8) throw std::invalid_argument("dim must be in 1..8");
  if (count < 1 || count > 50) throw std::invalid_argument("count must be in 1..50");
  grwick::ReportWriter w;
  grwick::run_suite(grwick::identity_checks(), seed, {dim}, count, 2, 1, w);
  return w.failures() == 0;
}

}  // namespace

PYBIND11_MODULE(grwick, m) {
  m.doc() = "exact fermionic Gaussian calculus: pfaffians, moments, and identity checks";
  m.attr("__version__") = "1.0.0";

  m.def("pfaffian", &py_pfaffian, py::arg("matrix"),
        "Pfaffian of an antisymmetric matrix given as nested lists.");
  m.def("moment", &py_moment, py::arg("matrix"), py::arg("indices"),
        "Gaussian moment of the generator sequence under the given pairing matrix.");
  m.def("integral_bound", &py_integral_bound, py::arg("matrix"),
        "Measured integral constant b = 2 max |Pf(C_I)|^(1/|I|).");
  m.def("identity_spot_check", &py_identity_spot_check, py::arg("seed") = 1,
        py::arg("dim") = 3, py::arg("count") = 3,
        "Run the exact identity suite once; True iff every check holds.");
}
