#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

#include "ccl/windows.hpp"

namespace ccl {

struct VoronoiInstance {
  std::span<const double> lambda;  // lambda[n], index 0 unused
  int weight = 12;
  std::int64_t b = 1;
  std::int64_t c = 1;
  double N = 1.0;
  SmoothWindow V = SmoothWindow::bump();
  std::size_t rhs_truncation = 0;  // 0 selects default_truncation
  double quadrature_tol = 1e-15;   // per dual term
};

// Dual terms beyond n* are below exp(-2 sqrt(A/2.8)) |lambda(n)| N/c with
// A = 4 pi sqrt(n N)/c; n* puts that under 1e-16 for the bump, then doubles it.
std::size_t default_truncation(int weight, std::int64_t c, double N);

// Coefficient table length needed for the instance (and its doubling check).
std::size_t required_coefficients(const VoronoiInstance& inst, bool doubling);

struct VoronoiSide {
  std::complex<double> value;
  std::size_t terms = 0;
  double truncation_estimate = 0.0;  // bound on the neglected dual tail
  double quadrature_error = 0.0;     // sum of per-term error estimates
};

// sum_n lambda(n) e(bn/c) V(n/N)
std::complex<double> voronoi_lhs(const VoronoiInstance& inst);

// (N/c) sum_{n <= n*} lambda(n) e(-b' n/c) 2 pi i^k int V(x) J_{k-1}(4 pi sqrt(n N x)/c) dx,
// b b' = 1 mod c.
VoronoiSide voronoi_rhs(const VoronoiInstance& inst);

struct VoronoiCheck {
  std::complex<double> lhs;
  VoronoiSide rhs;
  double relative_error = 0.0;  // |lhs - rhs| / (|lhs| + |rhs| + 1e-300)
  std::complex<double> rhs_doubled;
  double doubling_change = 0.0;  // |rhs(2 n*) - rhs(n*)|
};

VoronoiCheck voronoi_check(const VoronoiInstance& inst, bool doubling = true);

}  // namespace ccl
