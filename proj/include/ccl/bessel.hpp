#pragma once

#include <complex>

namespace ccl {

enum class BesselStrategy { Series, Asymptotic, Recurrence, Integral };

const char* to_string(BesselStrategy s);

// J_nu(x) for real nu >= 0, x >= 0, with region-based strategy selection:
//   x >= max(20, 2 nu, nu^2 / 24)    Hankel asymptotic expansion
//   x^2 <= 16 (nu + 1)               ascending power series in extended precision
//   otherwise                        Miller backward recurrence (integer nu) or the
//                                    Schlaefli integral (non-integer nu)
class BesselKernel {
 public:
  explicit BesselKernel(double order);

  double order() const { return nu_; }
  double switchover() const { return x0_; }
  BesselStrategy strategy_for(double x) const;
  double operator()(double x) const;

 private:
  double nu_;
  double x0_;
  bool integer_;
  long double log_gamma_;  // log Gamma(nu + 1)
};

double bessel_j(double nu, double x);

// Individual strategies; each is usable on its own for cross-checks.
double bessel_j_series(double nu, double x);
double bessel_j_asymptotic(double nu, double x);
double bessel_j_recurrence(int n, double x);
// (1/pi) int_0^pi cos(n t - x sin t) dt for integer n (periodic trapezoid, exponentially
// convergent); the Schlaefli integral for non-integer nu.
double bessel_j_integral(double nu, double x);

// (J_{2it}(x) - J_{-2it}(x)) / sinh(pi t), the kernel of the Maass-side Kuznetsov
// transform. Purely imaginary; the t -> 0 limit is 2i Y_0(x).
std::complex<double> bessel_imaginary_order_kernel(double t, double x);

}  // namespace ccl
