#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ccl/bessel.hpp"

namespace ccl {

// Smooth compactly supported weight with exact derivatives up to order 4 and an
// optional modulation W_eta(x) = W(x) e(eta x).
//
//   bump:     exp(-1/((x-1)(2-x))) on (1, 2)
//   plateau:  1 on [inner_lo, inner_hi], smooth monotone ramps down to 0 at outer_lo, outer_hi
//   zero:     identically 0
class SmoothWindow {
 public:
  enum class Kind { Bump, Plateau, Zero };

  static SmoothWindow bump();
  static SmoothWindow zero();
  static SmoothWindow plateau(double outer_lo, double inner_lo, double inner_hi, double outer_hi);

  Kind kind() const { return kind_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double eta() const { return eta_; }
  double amplitude() const { return amplitude_; }

  SmoothWindow scaled(double factor) const;
  SmoothWindow modulated(double eta) const;

  // Unmodulated W(x), including the amplitude.
  double operator()(double x) const;
  // W^{(j)}(x), 0 <= j <= 4, unmodulated.
  double derivative(double x, int j) const;
  // W(x) e(eta x).
  std::complex<double> at(double x) const;

 private:
  Kind kind_ = Kind::Zero;
  double lo_ = 1.0, hi_ = 2.0;
  double inner_lo_ = 1.0, inner_hi_ = 2.0;
  double eta_ = 0.0;
  double amplitude_ = 1.0;

  // Taylor coefficients c_0..c_4 of the unscaled, unmodulated window at x.
  void jet(double x, double (&c)[5]) const;
};

SmoothWindow bump_window();

// int W_eta(x) x^{s-1} dx to absolute tolerance 1e-12.
std::complex<double> mellin_at(const SmoothWindow& w, std::complex<double> s);

// 2 pi i^kappa int W_eta(y) J_{kappa-1}(4 pi sqrt(y w + z)) dy, for w != 0 and z >= 4|w|.
std::complex<double> w_star(const SmoothWindow& window, int kappa, double z, double w);

struct OscillatoryFit {
  std::vector<double> z;
  std::vector<std::complex<double>> plus;   // W_+ at each z
  std::vector<std::complex<double>> minus;  // W_- at each z
  std::vector<double> plus_slope;           // z |dW_+/dz|
  std::vector<double> minus_slope;          // z |dW_-/dz|
  double residual = 0.0;                    // max absolute misfit over all local windows
};

// Local least squares of samples against
//   z^{-1/4} sum_p ((z - z_i)/z_i)^p [A_p e(2 sqrt z) + B_p e(-2 sqrt z)],  p <= degree,
// over about two oscillations of e(2 sqrt z) around each grid point. The grid must be
// ascending with at least 4 points per oscillation.
OscillatoryFit fit_oscillatory(std::span<const double> z, std::span<const std::complex<double>> values,
                               int degree = 3);

// Samples w_star on the grid and fits the two-term model.
OscillatoryFit extract_oscillatory_parts(const SmoothWindow& window, int kappa, double w,
                                         std::span<const double> z_grid);

// phi(x) = e^{sign i x alpha} g(x/Z) (x/Z)^{i tau} with g a window supported in [1, 2].
struct TransformKernel {
  double Z = 1.0;
  double alpha = 0.0;
  double tau = 0.0;
  int sign = 1;
  SmoothWindow window = SmoothWindow::bump();

  std::complex<double> phi(double x) const;
};

// 4 i^k int phi(x) J_{k-1}(x) dx / x, k >= 2 even.
std::complex<double> kuznetsov_transform_dot(const TransformKernel& kernel, int k);
// 2 pi i int phi(x) (J_{2it}(x) - J_{-2it}(x)) / sinh(pi t) dx / x.
std::complex<double> kuznetsov_transform_tilde(const TransformKernel& kernel, double t);

struct DecayProfile {
  std::vector<int> k;
  std::vector<double> magnitude;  // |dot phi(k)|
  double slope = 0.0;             // of log|dot phi| against log(1 + k/Z), nonzero values only
  std::size_t fitted_points = 0;
};

DecayProfile dot_decay_profile(const TransformKernel& kernel, int k_lo, int k_hi, int k_step = 2);

}  // namespace ccl
