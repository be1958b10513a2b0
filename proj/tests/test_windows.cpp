#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ccl/bessel.hpp"
#include "ccl/errors.hpp"
#include "ccl/quadrature.hpp"
#include "ccl/windows.hpp"
#include "doctest.h"

using namespace ccl;

namespace {

constexpr double kPi = std::numbers::pi;

double bump_formula(double x) { return x <= 1.0 || x >= 2.0 ? 0.0 : std::exp(-1.0 / ((x - 1.0) * (2.0 - x))); }

bool close(double got, double want, double rel, double abs) { return std::abs(got - want) <= std::max(rel * std::abs(want), abs); }

// 2 pi i^kappa int_1^2 W(y) J_{kappa-1}(4 pi sqrt(y w + z)) dy with 500 panels of 20-point Gauss.
std::complex<double> w_star_oracle(int kappa, double z, double w) {
  double sum = 0.0;
  const int panels = 500;
  for (int p = 0; p < panels; ++p) {
    double a = 1.0 + static_cast<double>(p) / panels, b = 1.0 + static_cast<double>(p + 1) / panels;
    sum += boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double y) { return bump_formula(y) * boost::math::cyl_bessel_j(kappa - 1, 4.0 * kPi * std::sqrt(y * w + z)); },
        a, b);
  }
  std::complex<double> ik = std::pow(std::complex<double>(0.0, 1.0), kappa);
  return 2.0 * kPi * ik * sum;
}

}  // namespace

TEST_CASE("bump window values") {
  auto W = bump_window();
  CHECK(W(1.0) == 0.0);
  CHECK(W(2.0) == 0.0);
  CHECK(W(0.5) == 0.0);
  CHECK(W(1.5) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
  CHECK(W(1.5) == doctest::Approx(0.0183156389).epsilon(1e-9));
  CHECK(std::abs(W.derivative(1.5, 1)) < 1e-15);
  for (int j = 0; j <= 4; ++j) {
    CHECK(W.derivative(1.0, j) == 0.0);
    CHECK(W.derivative(2.0, j) == 0.0);
  }
}

TEST_CASE("bump derivatives against automatic differentiation") {
  using boost::math::differentiation::make_fvar;
  auto W = bump_window();
  for (double x = 1.01; x < 2.0; x += 0.0137) {
    auto v = make_fvar<double, 4>(x);
    auto f = exp(-1.0 / ((v - 1.0) * (2.0 - v)));
    for (int j = 0; j <= 4; ++j) {
      double want = f.derivative(j);
      CHECK(close(W.derivative(x, j), want, 1e-10, 1e-12));
    }
  }
}

TEST_CASE("modulated and scaled windows") {
  auto W = bump_window();
  auto M = W.modulated(0.3);
  auto S = W.scaled(2.0);
  for (double x = 1.05; x < 2.0; x += 0.1) {
    std::complex<double> e(std::cos(2.0 * kPi * 0.3 * x), std::sin(2.0 * kPi * 0.3 * x));
    CHECK(std::abs(M.at(x) - W(x) * e) < 1e-16);
    CHECK(S(x) == 2.0 * W(x));
  }
  auto P = SmoothWindow::plateau(0.5, 1.0, 3.0, 4.0);
  CHECK(P(2.0) == 1.0);
  CHECK(P(0.5) == 0.0);
  CHECK(P(4.0) == 0.0);
  CHECK(P(0.75) > 0.0);
  CHECK(P(0.75) < 1.0);
  CHECK_THROWS_AS(SmoothWindow::plateau(1.0, 0.5, 2.0, 3.0), ContractError);
}

TEST_CASE("Mellin transform") {
  auto W = bump_window();
  double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(bump_formula, 1.0, 2.0, 15, 1e-14);
  auto v = mellin_at(W, 1.0);
  CHECK(std::abs(v.real() - oracle) < 1e-12);
  CHECK(std::abs(v.imag()) < 1e-15);
  CHECK(std::abs(v.real() - 0.0070298584066096562) < 1e-12);
  CHECK(std::abs(mellin_at(W, {1.0, 1000.0})) < 1e-8);
  for (double t : {500.0, -500.0, 800.0, 2000.0}) CHECK(std::abs(mellin_at(W, {0.0, t})) <= 1e-6);
  CHECK(mellin_at(SmoothWindow::zero(), 2.0) == std::complex<double>(0.0));
}

TEST_CASE("Bessel special values") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  for (double nu : {0.5, 1.0, 11.0, 25.5}) CHECK(bessel_j(nu, 0.0) == 0.0);
  double series = bessel_j_series(11.0, 1.0);
  double integral = bessel_j_integral(11.0, 1.0);
  // The integral representation cancels O(1) terms, so its accuracy is absolute.
  CHECK(std::abs(series - integral) <= 1e-15);
  CHECK(std::abs(series - 1.1980067463031370965e-11) <= 1e-13 * 1.2e-11);
  CHECK(std::abs(bessel_j(11.0, 4.0 * kPi) - 0.2913379679389660806) < 1e-14);
}

TEST_CASE("Bessel against Boost on the order-argument grid") {
  std::size_t failures = 0;
  for (int n = 0; n <= 30; ++n)
    for (int i = 1; i <= 1000; ++i) {
      double x = 0.2 * i;
      if (!close(bessel_j(n, x), boost::math::cyl_bessel_j(n, x), 1e-10, 1e-12)) ++failures;
    }
  CHECK(failures == 0);
  for (double nu : {0.5, 2.25, 7.5, 11.0, 15.0, 25.5})
    for (double x : {0.3, 1.0, 5.0, 12.0, 19.9, 20.1, 40.0, 75.0, 150.0})
      CHECK(close(bessel_j(nu, x), boost::math::cyl_bessel_j(nu, x), 1e-10, 1e-12));
}

TEST_CASE("Bessel strategies agree with the integral representation") {
  std::size_t failures = 0;
  for (int n = 0; n <= 30; ++n) {
    BesselKernel k(n);
    for (int i = 1; i <= 1000; ++i) {
      double x = 0.2 * i;
      double ref = bessel_j_integral(n, x);
      if (std::abs(k(x) - ref) > 1e-9) ++failures;
      if (x * x <= 16.0 * (n + 1) && std::abs(bessel_j_series(n, x) - ref) > 1e-9) ++failures;
      if (x >= k.switchover() && std::abs(bessel_j_asymptotic(n, x) - ref) > 1e-9) ++failures;
      if (std::abs(bessel_j_recurrence(n, x) - ref) > 1e-9) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("Bessel strategy regions") {
  BesselKernel k(11.0);
  CHECK(k.switchover() >= 22.0);
  CHECK(k.strategy_for(1.0) == BesselStrategy::Series);
  CHECK(k.strategy_for(100.0) == BesselStrategy::Asymptotic);
  CHECK(BesselKernel(11.5).strategy_for(16.0) == BesselStrategy::Integral);
  CHECK(BesselKernel(11.0).strategy_for(16.0) == BesselStrategy::Recurrence);
}

TEST_CASE("imaginary-order kernel") {
  struct Ref {
    double t, x, im;
  };
  for (auto r : {Ref{0.5, 3.0, 0.80717565825591989153}, Ref{1.0, 10.0, 0.2041000348937227199},
                 Ref{2.0, 25.0, -0.30014908735185294486}, Ref{3.0, 60.0, 0.14414902040445742952}}) {
    auto v = bessel_imaginary_order_kernel(r.t, r.x);
    CHECK(std::abs(v.real()) < 1e-12);
    CHECK(std::abs(v.imag() - r.im) < 1e-9);
  }
  for (double x : {0.5, 2.0, 9.0, 30.0}) {
    auto v = bessel_imaginary_order_kernel(0.0, x);
    CHECK(std::abs(v.imag() - 2.0 * boost::math::cyl_neumann(0, x)) < 1e-9);
  }
}

TEST_CASE("adaptive quadrature") {
  auto r = integrate([](double x) { return std::complex<double>(std::cos(x), std::sin(x)); }, 0.0, 10.0);
  CHECK(std::abs(r.value - std::complex<double>(std::sin(10.0), 1.0 - std::cos(10.0))) < 1e-12);
  auto g = gauss_legendre(16);
  double s = 0.0;
  for (double w : g.weights) s += w;
  CHECK(s == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("W-star transform") {
  auto W = bump_window();
  CHECK_THROWS_AS(w_star(W, 12, 1.0, 1.0), ContractError);
  CHECK_THROWS_AS(w_star(W, 12, 100.0, 0.0), ContractError);
  auto v = w_star(W, 12, 100.0, 1.0);
  auto oracle = w_star_oracle(12, 100.0, 1.0);
  CHECK(std::abs(v - oracle) < 1e-8);
  CHECK(std::abs(w_star(W, 12, 100.0, -1.0) - w_star_oracle(12, 100.0, -1.0)) < 1e-8);
  CHECK(std::abs(w_star(W.scaled(2.0), 12, 100.0, 1.0) - 2.0 * v) < 1e-15);
  CHECK(w_star(SmoothWindow::zero(), 12, 100.0, 1.0) == std::complex<double>(0.0));
}

TEST_CASE("oscillatory fit recovers the model") {
  std::vector<double> z;
  std::vector<std::complex<double>> vals;
  const std::complex<double> A(0.7, -0.2);
  for (double x = 100.0; x <= 200.0; x += 0.5) {
    z.push_back(x);
    double ph = 2.0 * kPi * 2.0 * std::sqrt(x);
    vals.push_back(A * std::pow(x, -0.25) * std::complex<double>(std::cos(ph), std::sin(ph)));
  }
  auto fit = fit_oscillatory(z, vals);
  CHECK(fit.residual < 1e-8);
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(std::abs(fit.plus[i] - A) < 1e-8);
    CHECK(std::abs(fit.minus[i]) < 1e-8);
  }
}

TEST_CASE("oscillatory parts of W-star") {
  std::vector<double> z;
  for (double x = 100.0; x <= 200.0; x += 0.5) z.push_back(x);
  auto fit = extract_oscillatory_parts(bump_window(), 12, 1.0, z);
  double peak = 0.0, sup_plus = 0.0, slope = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    peak = std::max(peak, std::abs(w_star(bump_window(), 12, z[i], 1.0)));
    sup_plus = std::max(sup_plus, std::abs(fit.plus[i]));
    slope = std::max(slope, fit.plus_slope[i]);
  }
  CHECK(fit.residual < 1e-4 * peak);
  CHECK(slope <= 10.0 * sup_plus);
}

TEST_CASE("W-star amplitudes shrink in the small sqrt(z)/w regime") {
  // Measured: amplitude / sup is about 1.2e-4 at sqrt(z)/w <= 0.1 and w = 1000, with the
  // onset of the regime at w >= 400 (z >= 4w forces sqrt(z)/w >= 2/sqrt(w)).
  const double w = 1000.0;
  std::vector<double> z;
  for (double x = 4.0 * w; x <= 0.09 * w * w; x += 0.2 * std::sqrt(x)) z.push_back(x);
  for (double x = 0.09 * w * w; x <= 4.0 * w * w; x += 0.2 * std::sqrt(x)) z.push_back(x);
  auto fit = extract_oscillatory_parts(bump_window(), 12, w, z);
  double sup = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) sup = std::max({sup, std::abs(fit.plus[i]), std::abs(fit.minus[i])});
  auto regime_max = [&](double theta) {
    double m = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (std::sqrt(z[i]) / w <= theta) m = std::max({m, std::abs(fit.plus[i]), std::abs(fit.minus[i])});
    return m / sup;
  };
  CHECK(regime_max(0.1) < 1e-3);
  CHECK(regime_max(0.07) < regime_max(0.1));
  CHECK(regime_max(0.1) < regime_max(0.2));
  CHECK(regime_max(0.2) < regime_max(0.5));
}

TEST_CASE("Kuznetsov transforms") {
  TransformKernel k;
  k.Z = 50.0;
  for (int kk = 502; kk <= 700; kk += 50) CHECK(std::abs(kuznetsov_transform_dot(k, kk)) < 1e-8);
  for (double t = -10.0; t <= 10.0; t += 0.5) CHECK(std::abs(kuznetsov_transform_tilde(k, t)) < 1e-6);
  auto profile = dot_decay_profile(k, 100, 1000, 2);
  CHECK(profile.fitted_points >= 10);
  CHECK(profile.slope <= -3.0);
  TransformKernel zero = k;
  zero.window = SmoothWindow::zero();
  CHECK(kuznetsov_transform_dot(zero, 12) == std::complex<double>(0.0));
  CHECK_THROWS_AS(kuznetsov_transform_dot(k, 13), ContractError);
}

TEST_CASE("Kuznetsov dot transform against direct quadrature") {
  TransformKernel k;
  k.Z = 20.0;
  k.alpha = 0.3;
  k.tau = 1.5;
  for (int kk : {2, 12, 24}) {
    double re = 0.0, im = 0.0;
    const int panels = 400;
    for (int p = 0; p < panels; ++p) {
      double a = k.Z * (1.0 + static_cast<double>(p) / panels), b = k.Z * (1.0 + static_cast<double>(p + 1) / panels);
      auto f = [&](double x, bool real) {
        auto v = k.phi(x) * boost::math::cyl_bessel_j(kk - 1, x) / x;
        return real ? v.real() : v.imag();
      };
      re += boost::math::quadrature::gauss<double, 20>::integrate([&](double x) { return f(x, true); }, a, b);
      im += boost::math::quadrature::gauss<double, 20>::integrate([&](double x) { return f(x, false); }, a, b);
    }
    std::complex<double> want = 4.0 * std::pow(std::complex<double>(0.0, 1.0), kk) * std::complex<double>(re, im);
    CHECK(std::abs(kuznetsov_transform_dot(k, kk) - want) < 1e-10);
  }
}
