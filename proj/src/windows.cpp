#include "ccl/windows.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "ccl/errors.hpp"
#include "ccl/fit.hpp"
#include "ccl/parallel.hpp"
#include "ccl/quadrature.hpp"

namespace ccl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// exp(-745) is the smallest positive double; beyond it the window is exactly zero.
constexpr double kUnderflow = 745.0;

// Truncated Taylor series through order 4.
using Jet = std::array<double, 5>;

Jet mul(const Jet& a, const Jet& b) {
  Jet c{};
  for (int n = 0; n < 5; ++n)
    for (int i = 0; i <= n; ++i) c[n] += a[i] * b[n - i];
  return c;
}

Jet div(const Jet& a, const Jet& b) {
  Jet q{};
  for (int n = 0; n < 5; ++n) {
    double s = a[n];
    for (int i = 1; i <= n; ++i) s -= b[i] * q[n - i];
    q[n] = s / b[0];
  }
  return q;
}

Jet exp(const Jet& a) {
  Jet e{};
  e[0] = std::exp(a[0]);
  for (int n = 1; n < 5; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += k * a[k] * e[n - k];
    e[n] = s / n;
  }
  return e;
}

Jet constant(double v) { return {v, 0, 0, 0, 0}; }

// exp(-1/t) for the affine jet t = t0 + t1 h; zero for t <= 0 or underflow.
Jet psi(double t0, double t1) {
  if (t0 <= 0.0 || 1.0 / t0 > kUnderflow) return {};
  Jet t{t0, t1, 0, 0, 0};
  Jet g = div(constant(-1.0), t);
  return exp(g);
}

// Smooth step: 0 for t <= 0, 1 for t >= 1, psi(t) / (psi(t) + psi(1 - t)) between.
Jet smooth_step(double t0, double t1) {
  if (t0 <= 0.0) return {};
  if (t0 >= 1.0) return constant(1.0);
  Jet a = psi(t0, t1);
  Jet b = psi(1.0 - t0, -t1);
  if (a[0] == 0.0) return {};
  if (b[0] == 0.0) return constant(1.0);
  Jet den{};
  for (int i = 0; i < 5; ++i) den[i] = a[i] + b[i];
  return div(a, den);
}

}  // namespace

SmoothWindow SmoothWindow::bump() {
  SmoothWindow w;
  w.kind_ = Kind::Bump;
  w.lo_ = 1.0;
  w.hi_ = 2.0;
  return w;
}

SmoothWindow SmoothWindow::zero() { return SmoothWindow{}; }

SmoothWindow SmoothWindow::plateau(double outer_lo, double inner_lo, double inner_hi, double outer_hi) {
  require(outer_lo < inner_lo && inner_lo <= inner_hi && inner_hi < outer_hi,
          "SmoothWindow::plateau: need outer_lo < inner_lo <= inner_hi < outer_hi");
  SmoothWindow w;
  w.kind_ = Kind::Plateau;
  w.lo_ = outer_lo;
  w.inner_lo_ = inner_lo;
  w.inner_hi_ = inner_hi;
  w.hi_ = outer_hi;
  return w;
}

SmoothWindow SmoothWindow::scaled(double factor) const {
  SmoothWindow w = *this;
  w.amplitude_ *= factor;
  return w;
}

SmoothWindow SmoothWindow::modulated(double eta) const {
  SmoothWindow w = *this;
  w.eta_ = eta;
  return w;
}

void SmoothWindow::jet(double x, double (&c)[5]) const {
  Jet r{};
  switch (kind_) {
    case Kind::Zero: break;
    case Kind::Bump: {
      if (x <= lo_ || x >= hi_) break;
      double p0 = (x - 1.0) * (2.0 - x);
      if (1.0 / p0 > kUnderflow) break;
      Jet p{p0, 3.0 - 2.0 * x, -1.0, 0, 0};
      r = exp(div(constant(-1.0), p));
      break;
    }
    case Kind::Plateau: {
      if (x <= lo_ || x >= hi_) break;
      double rise = inner_lo_ - lo_, fall = hi_ - inner_hi_;
      Jet up = smooth_step((x - lo_) / rise, 1.0 / rise);
      Jet down = smooth_step((hi_ - x) / fall, -1.0 / fall);
      r = mul(up, down);
      break;
    }
  }
  std::copy(r.begin(), r.end(), c);
}

double SmoothWindow::operator()(double x) const {
  double c[5];
  jet(x, c);
  return amplitude_ * c[0];
}

double SmoothWindow::derivative(double x, int j) const {
  require(j >= 0 && j <= 4, "SmoothWindow::derivative: order must lie in [0, 4]");
  static constexpr double factorial[5] = {1, 1, 2, 6, 24};
  double c[5];
  jet(x, c);
  return amplitude_ * factorial[j] * c[j];
}

std::complex<double> SmoothWindow::at(double x) const {
  double v = (*this)(x);
  if (v == 0.0 || eta_ == 0.0) return v;
  // Reduce eta x mod 1 before scaling by 2 pi.
  double phase = eta_ * x;
  phase -= std::round(phase);
  return v * std::complex<double>(std::cos(kTwoPi * phase), std::sin(kTwoPi * phase));
}

SmoothWindow bump_window() { return SmoothWindow::bump(); }

std::complex<double> mellin_at(const SmoothWindow& w, std::complex<double> s) {
  if (w.kind() == SmoothWindow::Kind::Zero) return 0.0;
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  opt.max_phase_rate = std::abs(s.imag()) / w.support_lo() + kTwoPi * std::abs(w.eta());
  std::complex<double> sm1 = s - 1.0;
  return integrate([&](double x) { return w.at(x) * std::exp(sm1 * std::log(x)); }, w.support_lo(),
                   w.support_hi(), opt)
      .value;
}

namespace {

std::complex<double> i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace

std::complex<double> w_star(const SmoothWindow& window, int kappa, double z, double w) {
  require(w != 0.0, "w_star: w must be nonzero");
  require(z >= 4.0 * std::abs(w), "w_star: requires z >= 4|w|");
  require(kappa >= 1, "w_star: kappa must be positive");
  if (window.kind() == SmoothWindow::Kind::Zero) return 0.0;
  BesselKernel bessel(kappa - 1);
  double lo = window.support_lo(), hi = window.support_hi();
  double slowest = std::max(std::min(z + lo * w, z + hi * w), 0.0);
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.max_phase_rate = kTwoPi * std::abs(w) / std::sqrt(std::max(slowest, 1e-300)) + kTwoPi * std::abs(window.eta());
  auto r = integrate(
      [&](double y) {
        std::complex<double> v = window.at(y);
        if (v == 0.0) return v;
        return v * bessel(4.0 * std::numbers::pi * std::sqrt(y * w + z));
      },
      lo, hi, opt);
  return kTwoPi * i_power(kappa) * r.value;
}

OscillatoryFit fit_oscillatory(std::span<const double> z, std::span<const std::complex<double>> values, int degree) {
  require(z.size() == values.size(), "fit_oscillatory: size mismatch");
  require(degree >= 0, "fit_oscillatory: degree must be non-negative");
  const std::size_t n = z.size();
  const auto cols = static_cast<Eigen::Index>(2 * (degree + 1));
  require(n >= static_cast<std::size_t>(cols), "fit_oscillatory: grid too short for the model");
  for (std::size_t i = 0; i < n; ++i) require(z[i] > 0.0, "fit_oscillatory: z must be positive");
  for (std::size_t i = 1; i < n; ++i) {
    require(z[i] > z[i - 1], "fit_oscillatory: grid must be strictly ascending");
    // One oscillation of e(2 sqrt z) spans sqrt(z) in z.
    require(z[i] - z[i - 1] <= 0.25 * std::sqrt(z[i - 1]) * (1.0 + 1e-12),
            "fit_oscillatory: grid has fewer than 4 points per oscillation");
  }

  OscillatoryFit out;
  out.z.assign(z.begin(), z.end());
  out.plus.resize(n);
  out.minus.resize(n);
  out.plus_slope.resize(n);
  out.minus_slope.resize(n);
  std::vector<double> residuals(n, 0.0);
  std::vector<std::complex<double>> carrier(n);
  std::vector<double> envelope(n);
  for (std::size_t j = 0; j < n; ++j) {
    double r = std::sqrt(z[j]);
    double phase = 2.0 * r;
    phase -= std::floor(phase);
    carrier[j] = {std::cos(kTwoPi * phase), std::sin(kTwoPi * phase)};
    envelope[j] = std::pow(z[j], -0.25);
  }

  parallel_for(n, [&](std::size_t i) {
    double ri = std::sqrt(z[i]);
    // Two oscillations: sqrt(z) within 1/2 of the centre.
    auto first = static_cast<std::size_t>(
        std::lower_bound(z.begin(), z.end(), std::pow(std::max(ri - 0.5, 0.0), 2)) - z.begin());
    auto last = static_cast<std::size_t>(std::upper_bound(z.begin(), z.end(), (ri + 0.5) * (ri + 0.5)) - z.begin());
    // Widen symmetrically until the system is overdetermined.
    while (last - first < static_cast<std::size_t>(cols) + 2 && (first > 0 || last < n)) {
      if (first > 0) --first;
      if (last < n) ++last;
    }
    const auto rows = static_cast<Eigen::Index>(last - first);
    if (rows < cols) throw NumericalError("fit_oscillatory: window too small for the model");
    double h = 0.0;
    for (std::size_t j = first; j < last; ++j) h = std::max(h, std::abs(z[j] - z[i]) / z[i]);
    if (h == 0.0) h = 1.0;
    Eigen::MatrixXcd a(rows, cols);
    Eigen::VectorXcd b(rows);
    for (std::size_t j = first; j < last; ++j) {
      auto row = static_cast<Eigen::Index>(j - first);
      double u = (z[j] - z[i]) / (z[i] * h);
      double up = 1.0;
      for (int p = 0; p <= degree; ++p) {
        a(row, 2 * p) = envelope[j] * up * carrier[j];
        a(row, 2 * p + 1) = envelope[j] * up * std::conj(carrier[j]);
        up *= u;
      }
      b(row) = values[j];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
    if (qr.rank() < cols) throw NumericalError("fit_oscillatory: ill-conditioned local fit");
    Eigen::VectorXcd coef = qr.solve(b);
    out.plus[i] = coef(0);
    out.minus[i] = coef(1);
    if (degree >= 1) {
      out.plus_slope[i] = std::abs(coef(2)) / h;
      out.minus_slope[i] = std::abs(coef(3)) / h;
    }
    residuals[i] = (a * coef - b).cwiseAbs().maxCoeff();
  });
  out.residual = *std::max_element(residuals.begin(), residuals.end());
  return out;
}

OscillatoryFit extract_oscillatory_parts(const SmoothWindow& window, int kappa, double w,
                                         std::span<const double> z_grid) {
  std::vector<std::complex<double>> samples(z_grid.size());
  parallel_for(z_grid.size(), [&](std::size_t i) { samples[i] = w_star(window, kappa, z_grid[i], w); });
  return fit_oscillatory(z_grid, samples);
}

std::complex<double> TransformKernel::phi(double x) const {
  if (x <= 0.0) return 0.0;
  double u = x / Z;
  std::complex<double> g = window.at(u);
  if (g == 0.0) return 0.0;
  double arg = sign * x * alpha + tau * std::log(u);
  return g * std::complex<double>(std::cos(arg), std::sin(arg));
}

namespace {

void check_kernel(const TransformKernel& k) {
  require(k.Z > 0.0, "TransformKernel: Z must be positive");
  require(std::abs(k.alpha) <= 0.8, "TransformKernel: |alpha| must not exceed 4/5");
  require(k.sign == 1 || k.sign == -1, "TransformKernel: sign must be +1 or -1");
  require(k.window.support_lo() > 0.0, "TransformKernel: window support must be positive");
}

// Integrates phi(x) kernel(x) / x over the support with a tolerance that is absolute
// 1e-10 for ordinary values and relative 1e-10 for values far below that.
template <class Kernel>
std::complex<double> transform(const TransformKernel& k, Kernel&& kernel) {
  if (k.window.kind() == SmoothWindow::Kind::Zero || k.window.amplitude() == 0.0) return 0.0;
  double lo = k.Z * k.window.support_lo(), hi = k.Z * k.window.support_hi();
  auto integrand = [&](double x) {
    std::complex<double> p = k.phi(x);
    if (p == 0.0) return p;
    return p * kernel(x) / x;
  };
  double scale = 0.0;
  constexpr int samples = 64;
  for (int i = 1; i < samples; ++i) scale = std::max(scale, std::abs(integrand(lo + (hi - lo) * i / samples)));
  scale *= hi - lo;
  if (scale == 0.0) return 0.0;
  QuadratureOptions opt;
  opt.abs_tol = std::min(1e-10, 1e-10 * scale);
  opt.max_phase_rate = std::abs(k.alpha) + std::abs(k.tau) / lo + 1.0 + kTwoPi * std::abs(k.window.eta()) / k.Z;
  return integrate(integrand, lo, hi, opt).value;
}

}  // namespace

std::complex<double> kuznetsov_transform_dot(const TransformKernel& kernel, int k) {
  check_kernel(kernel);
  require(k >= 2 && k % 2 == 0, "kuznetsov_transform_dot: k must be even and at least 2");
  BesselKernel bessel(k - 1);
  return 4.0 * i_power(k) * transform(kernel, [&](double x) { return bessel(x); });
}

std::complex<double> kuznetsov_transform_tilde(const TransformKernel& kernel, double t) {
  check_kernel(kernel);
  return std::complex<double>(0.0, kTwoPi) *
         transform(kernel, [&](double x) { return bessel_imaginary_order_kernel(t, x); });
}

DecayProfile dot_decay_profile(const TransformKernel& kernel, int k_lo, int k_hi, int k_step) {
  require(k_step > 0 && k_step % 2 == 0, "dot_decay_profile: step must be positive and even");
  require(k_lo >= 2 && k_lo % 2 == 0 && k_hi >= k_lo, "dot_decay_profile: need even 2 <= k_lo <= k_hi");
  DecayProfile out;
  for (int k = k_lo; k <= k_hi; k += k_step) out.k.push_back(k);
  out.magnitude.resize(out.k.size());
  parallel_for(out.k.size(), [&](std::size_t i) { out.magnitude[i] = std::abs(kuznetsov_transform_dot(kernel, out.k[i])); });
  std::vector<double> x, y;
  for (std::size_t i = 0; i < out.k.size(); ++i) {
    if (out.magnitude[i] <= 0.0) continue;
    x.push_back(std::log1p(out.k[i] / kernel.Z));
    y.push_back(std::log(out.magnitude[i]));
  }
  out.fitted_points = x.size();
  if (x.size() >= 2) out.slope = fit_line(x, y).slope;
  else out.slope = -std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace ccl
