#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace ccl {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  // Fastest phase rate of the integrand in radians per unit length; the interval is
  // pre-split so every panel sees at least 8 nodes per period.
  double max_phase_rate = 0.0;
  int max_depth = 30;
  std::size_t max_evaluations = 50'000'000;
};

// Adaptive Gauss-Legendre with period-resolved initial paneling. Throws NumericalError
// if the tolerance is not met within the evaluation budget.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};
GaussRule gauss_legendre(std::size_t n);

}  // namespace ccl
