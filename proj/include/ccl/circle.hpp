#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace ccl {

// Point of R/Z written exactly as num / (den 2^60).
struct ExactPoint {
  __int128 num = 0;
  std::int64_t den = 1;

  double to_double() const;
};

// Weighted cover of [0, 1) by arcs [d/c - delta, d/c + delta), one per reduced residue
// d mod c, carrying weight w(c). Itilde is their weighted indicator sum over 2 delta Lambda.
class FareyCover {
 public:
  // w(c) = w0(c / Q) for integers c in [Q, 2Q].
  static FareyCover build(const std::function<double(double)>& w0, double Q, double delta);
  // Explicit weights; c outside [Q, 2Q] is rejected.
  static FareyCover build(std::span<const std::pair<std::int64_t, double>> weights, double Q, double delta);

  double Q() const { return Q_; }
  // delta after snapping to the 2^-60 grid.
  double delta() const { return delta_; }
  std::int64_t delta_units() const { return delta_units_; }
  double Lambda() const { return Lambda_; }
  std::size_t interval_count() const { return intervals_; }
  const std::vector<std::pair<std::int64_t, double>>& weights() const { return weights_; }

  // Itilde(alpha); intervals are closed on the left and open on the right.
  double itilde(double alpha) const;

  // Exact piecewise-constant description of Itilde on [0, 1): Itilde = values[i] on
  // [breaks[i], breaks[i+1]).
  const std::vector<ExactPoint>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }

  // int_0^1 |1 - Itilde|^2 and int_0^1 Itilde, summed over the exact pieces.
  double l2_error() const { return l2_error_; }
  double mass() const { return mass_; }

 private:
  double Q_ = 1.0;
  double delta_ = 0.0;
  std::int64_t delta_units_ = 0;
  double Lambda_ = 0.0;
  std::size_t intervals_ = 0;
  std::vector<std::pair<std::int64_t, double>> weights_;
  std::vector<ExactPoint> breaks_;
  std::vector<double> break_approx_;
  std::vector<double> values_;
  double l2_error_ = 0.0;
  double mass_ = 0.0;

  void sweep();
};

FareyCover build_cover(const std::function<double(double)>& w0, double Q, double delta);
double itilde_eval(const FareyCover& cover, double alpha);
double l2_error(const FareyCover& cover);

// 10 Q^2 / (delta Lambda^2) is the desk-scale form of the L^2 bound; this returns the
// ratio of the measured error to Q^2 / (delta Lambda^2).
double l2_bound_ratio(const FareyCover& cover);

// Finitely supported sequence: values[i] sits at index start + i.
struct Sequence {
  std::int64_t start = 0;
  std::vector<std::complex<double>> values;

  std::int64_t end() const { return start + static_cast<std::int64_t>(values.size()); }
};

// (1/(2 delta Lambda)) sum_c w(c) sum*_d int_{-delta}^{delta} F G e(-2n alpha) d eta at
// alpha = d/c + eta, F(alpha) = sum f(m) e(m alpha), 16-node Gauss-Legendre in eta.
std::complex<double> detect_additive(const FareyCover& cover, const Sequence& f, const Sequence& g, std::int64_t n);

// sum_{m1 + m2 = 2n} f(m1) g(m2).
std::complex<double> exact_additive(const Sequence& f, const Sequence& g, std::int64_t n);

}  // namespace ccl
