#include "ccl/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ccl/errors.hpp"
#include "ccl/quadrature.hpp"

namespace ccl {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

bool is_integer(double nu) { return nu == std::floor(nu) && nu < 1e9; }

// Hankel P and Q sums for mu = 4 nu^2 (mu may be negative for imaginary order).
void hankel_pq(long double mu, long double x, long double& p, long double& q) {
  p = 1.0L;
  q = 0.0L;
  long double term = 1.0L;
  long double previous = INFINITY;
  for (int k = 1; k < 400; ++k) {
    long double odd = 2.0L * k - 1.0L;
    term *= (mu - odd * odd) / (8.0L * k * x);
    long double mag = std::fabs(term);
    if (mag > previous && odd * odd > std::fabs(mu)) break;  // past the minimal term
    previous = mag;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (mag < 1e-22L * std::max(std::fabs(p), std::fabs(q) + 1e-300L)) break;
  }
}

}  // namespace

const char* to_string(BesselStrategy s) {
  switch (s) {
    case BesselStrategy::Series: return "series";
    case BesselStrategy::Asymptotic: return "asymptotic";
    case BesselStrategy::Recurrence: return "recurrence";
    case BesselStrategy::Integral: return "integral";
  }
  return "unknown";
}

namespace {

double series_with(double nu, double x, long double log_gamma) {
  if (x == 0) return nu == 0 ? 1.0 : 0.0;
  long double half = x / 2.0L;
  long double log_t0 = nu * std::log(half) - log_gamma;
  if (log_t0 < -11400.0L) return 0.0;
  long double term = std::exp(log_t0);
  long double sum = term;
  long double h2 = half * half;
  for (int k = 1; k < 2000; ++k) {
    term *= -h2 / (static_cast<long double>(k) * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum) && static_cast<long double>(k) * (k + nu) > h2) break;
  }
  return static_cast<double>(sum);
}

}  // namespace

double bessel_j_series(double nu, double x) {
  require(nu >= 0 && x >= 0, "bessel_j_series: requires nu >= 0 and x >= 0");
  return series_with(nu, x, std::lgamma(static_cast<long double>(nu) + 1.0L));
}

double bessel_j_asymptotic(double nu, double x) {
  require(nu >= 0 && x > 0, "bessel_j_asymptotic: requires nu >= 0 and x > 0");
  long double p, q;
  long double mu = 4.0L * nu * nu;
  hankel_pq(mu, x, p, q);
  long double omega;
  if (is_integer(nu)) {
    auto quarter = static_cast<int>(std::fmod(nu, 4.0));
    omega = static_cast<long double>(x) - kPi / 4.0L - quarter * kPi / 2.0L;
  } else {
    omega = static_cast<long double>(x) - static_cast<long double>(nu) * kPi / 2.0L - kPi / 4.0L;
  }
  long double amp = std::sqrt(2.0L / (kPi * x));
  return static_cast<double>(amp * (p * std::cos(omega) - q * std::sin(omega)));
}

double bessel_j_recurrence(int n, double x) {
  require(n >= 0 && x >= 0, "bessel_j_recurrence: requires n >= 0 and x >= 0");
  if (x == 0) return n == 0 ? 1.0 : 0.0;
  double top = std::max(static_cast<double>(n), x);
  int start = static_cast<int>(top + 30.0 + std::sqrt(40.0 * top));
  start += start % 2;  // even, so the normalization sum pairs up
  long double jp1 = 0.0L, j = 1e-300L, result = 0.0L, norm = 0.0L;
  long double two_over_x = 2.0L / x;
  for (int k = start; k > 0; --k) {
    long double jm1 = k * two_over_x * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 == n) result = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * j;
    if (std::fabs(j) > 1e250L) {
      j *= 1e-250L;
      jp1 *= 1e-250L;
      result *= 1e-250L;
      norm *= 1e-250L;
    }
  }
  norm += j;  // J_0 term
  return static_cast<double>(result / norm);
}

double bessel_j_integral(double nu, double x) {
  require(nu >= 0 && x >= 0, "bessel_j_integral: requires nu >= 0 and x >= 0");
  if (x == 0) return nu == 0 ? 1.0 : 0.0;
  if (is_integer(nu)) {
    // Periodic trapezoid: aliasing error is J_{2M - n}(x), negligible once 2M - n
    // clears x by a margin growing like x^{1/3}.
    double margin = 60.0 + 10.0 * std::cbrt(x);
    auto m = static_cast<int>(std::ceil((x + nu + margin) / 2.0));
    long double sum = 0.0L;
    for (int i = 0; i <= m; ++i) {
      long double theta = kPi * i / m;
      long double v = std::cos(static_cast<long double>(nu) * theta - x * std::sin(theta));
      sum += (i == 0 || i == m) ? 0.5L * v : v;
    }
    return static_cast<double>(sum / m);
  }
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  opt.max_phase_rate = nu + x;
  auto first = integrate([&](double t) { return std::complex<double>(std::cos(nu * t - x * std::sin(t)), 0.0); },
                         0.0, std::numbers::pi, opt);
  // int_0^inf exp(-x sinh s - nu s) ds, truncated where the exponent passes -50.
  double upper = 1.0;
  while (x * std::sinh(upper) + nu * upper < 50.0) upper *= 2.0;
  QuadratureOptions tail;
  tail.abs_tol = 1e-14;
  auto second = integrate([&](double s) { return std::complex<double>(std::exp(-x * std::sinh(s) - nu * s), 0.0); },
                          0.0, upper, tail);
  return (first.value.real() - std::sin(nu * std::numbers::pi) * second.value.real()) / std::numbers::pi;
}

BesselKernel::BesselKernel(double order) : nu_(order), integer_(is_integer(order)) {
  require(order >= 0, "BesselKernel: order must be non-negative");
  x0_ = std::max({20.0, 2.0 * order, order * order / 24.0});
  log_gamma_ = std::lgamma(static_cast<long double>(order) + 1.0L);
}

BesselStrategy BesselKernel::strategy_for(double x) const {
  if (x >= x0_) return BesselStrategy::Asymptotic;
  if (x * x <= 16.0 * (nu_ + 1.0)) return BesselStrategy::Series;
  return integer_ ? BesselStrategy::Recurrence : BesselStrategy::Integral;
}

double BesselKernel::operator()(double x) const {
  require(x >= 0, "bessel_j: x must be non-negative");
  if (x == 0) return nu_ == 0 ? 1.0 : 0.0;
  switch (strategy_for(x)) {
    case BesselStrategy::Asymptotic: return bessel_j_asymptotic(nu_, x);
    case BesselStrategy::Series: return series_with(nu_, x, log_gamma_);
    case BesselStrategy::Recurrence: return bessel_j_recurrence(static_cast<int>(nu_), x);
    case BesselStrategy::Integral: return bessel_j_integral(nu_, x);
  }
  return 0.0;
}

double bessel_j(double nu, double x) {
  require(nu >= 0, "bessel_j: order must be non-negative");
  return BesselKernel(nu)(x);
}

std::complex<double> bessel_imaginary_order_kernel(double t, double x) {
  require(x > 0, "bessel_imaginary_order_kernel: x must be positive");
  double abs_t = std::abs(t);
  if (x >= std::max(20.0, abs_t * abs_t / 3.0) && x >= 4.0 * abs_t) {
    long double p, q;
    hankel_pq(-16.0L * abs_t * abs_t, x, p, q);
    long double a = static_cast<long double>(x) - kPi / 4.0L;
    long double amp = std::sqrt(2.0L / (kPi * x));
    return {0.0, static_cast<double>(2.0L * amp * (p * std::sin(a) + q * std::cos(a)))};
  }
  // Schlaefli representation with sinh(pi t) divided out analytically. The second
  // integral is bounded by 1/x and enters with weight 2 cosh(pi t), which sets the
  // cancellation loss.
  double loss = 2.0 * std::cosh(std::numbers::pi * abs_t) / x * 1e-16;
  if (loss > 1e-9)
    throw NumericalError("bessel_imaginary_order_kernel: cancellation too severe at t = " + std::to_string(t) +
                         ", x = " + std::to_string(x));
  auto ratio = [&](double theta) {
    if (abs_t < 1e-12) return 2.0 * theta / std::numbers::pi;
    double num = std::expm1(2.0 * abs_t * theta) - std::expm1(-2.0 * abs_t * theta);
    double den = std::expm1(std::numbers::pi * abs_t) - std::expm1(-std::numbers::pi * abs_t);
    return num / den;
  };
  // Tolerances near the rounding level keep the kernel smooth in x to working precision,
  // so it can sit inside another adaptive quadrature.
  QuadratureOptions opt;
  opt.abs_tol = 1e-15;
  opt.max_phase_rate = x + 2.0 * abs_t;
  auto first = integrate([&](double th) { return std::complex<double>(ratio(th) * std::sin(x * std::sin(th)), 0.0); },
                         0.0, std::numbers::pi, opt);
  double upper = 1.0;
  while (x * std::sinh(upper) < 50.0) upper *= 2.0;
  QuadratureOptions tail;
  tail.abs_tol = 1e-16 / x;
  tail.max_phase_rate = 2.0 * abs_t;
  auto second = integrate(
      [&](double s) { return std::complex<double>(std::exp(-x * std::sinh(s)) * std::cos(2.0 * abs_t * s), 0.0); },
      0.0, upper, tail);
  double value = (first.value.real() - 2.0 * std::cosh(std::numbers::pi * abs_t) * second.value.real()) * 2.0 /
                 std::numbers::pi;
  return {0.0, value};
}

}  // namespace ccl
