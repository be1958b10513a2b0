#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ccl/fit.hpp"
#include "ccl/windows.hpp"

namespace ccl {

enum class TestSequence { Ones, Rademacher, Lambda3 };

std::string to_string(TestSequence s);
TestSequence parse_test_sequence(const std::string& name);

struct ExperimentConfig {
  double X = 100.0;
  double H = 10.0;
  double H_prime = 0.0;  // 0 selects X/3
  std::array<int, 3> weights{12, 12, 12};
  SmoothWindow W = SmoothWindow::bump();
  TestSequence a = TestSequence::Ones;
  std::uint64_t seed = 1;

  double resolved_H_prime() const { return H_prime > 0.0 ? H_prime : X / 3.0; }
  // 1 <= H <= H' <= X/3.
  void validate() const;
  // Coefficient tables must cover [X - 2H', 2X + 2H'].
  std::size_t table_length() const;
};

// lambda tables indexed by n; the default source is the memoized eigenform table.
using CoefficientSource = std::function<std::vector<double>(int weight, std::size_t upto)>;
CoefficientSource eigenform_source();

// a(n) for n <= upto (index 0 unused); Rademacher draws come from mt19937_64(seed) in order of n.
std::vector<double> test_sequence(TestSequence kind, std::uint64_t seed, std::size_t upto,
                                  const CoefficientSource& source, int lambda_weight);

// Integer shifts carrying a weight: w[i] sits at h = h0 + i.
struct ShiftWeights {
  std::int64_t h0 = 0;
  std::vector<double> w;

  static ShiftWeights from_window(const SmoothWindow& W, double H);
  ShiftWeights reflected() const;  // h -> -h
  bool all_zero() const;
};

// sum_h w(h) sum_{X <= n <= 2X} a(n) l1(n + h) l2(n - h), per-h inner sums reduced pairwise.
double pair_sum(std::span<const double> a, std::span<const double> l1, std::span<const double> l2, double X,
                const ShiftWeights& shifts);
// sum_h w(h) sum_{X <= n <= 2X} l1(n - h) l2(n) l3(n + h).
double triple_sum(std::span<const double> l1, std::span<const double> l2, std::span<const double> l3, double X,
                  const ShiftWeights& shifts);

struct CorrelationResult {
  double value = 0.0;
  double bound = 0.0;  // epsilon = 0, implied constant 1
  double bound_ratio = 0.0;
  double a_norm = 0.0;  // ||a||_2 over [X, 2X]
  std::size_t shifts = 0;
};

// Bound (X/H)((XH)^{1/2} + X H^{-1/2}) ||a||_2.
CorrelationResult shifted_pair_correlation(const ExperimentConfig& cfg, const CoefficientSource& source = eigenform_source());
// Bound min(XH, X^2 H^{-1/2}).
CorrelationResult triple_correlation(const ExperimentConfig& cfg, const CoefficientSource& source = eigenform_source());

// 50 significant digits of Euler's constant.
inline constexpr const char* kEulerGammaDigits = "0.57721566490153286060651209008240243104215933593992";

// sum_{X <= n <= 2X} a(n) sum_{d <= d_max} r_d(2n)/d^2 (log n + 2 gamma - 2 log d)^2.
double divisor_main_sum(std::span<const double> a, double X, std::int64_t d_max);

struct DivisorMainTermResult {
  double exact_lhs = 0.0;
  double main_term = 0.0;
  double relative_deviation = 0.0;
  double last_block_share = 0.0;  // |terms with d_max/2 < d <= d_max| / |main|
  double tail_bound = 0.0;        // bound on the omitted d > d_max, relative to |main|
  std::int64_t d_max = 0;
};

// lhs = sum_h W(h/H) sum_n a(n) tau(n+h) tau(n-h) against
// H What(1) sum_n a(n) sum_{d <= d_max} r_d(2n)/d^2 (log n + 2 gamma - 2 log d)^2.
// The last dyadic block of d must carry under 1% of the main term.
DivisorMainTermResult divisor_main_term(const ExperimentConfig& cfg, std::int64_t d_max,
                                        const CoefficientSource& source = eigenform_source());

struct WiltonResult {
  double sup = 0.0;
  double alpha = 0.0;
  std::size_t grid = 0;  // transform length, alpha = j / grid
  double dc = 0.0;       // S(0)
};

// max over alpha = j/L of |sum_{n <= x} lambda(n) e(n alpha)|, L the next power of two >= grid_factor x.
WiltonResult wilton_sup(std::span<const double> lambda, std::size_t x, int grid_factor = 4);
std::complex<double> twisted_partial_sum(std::span<const double> lambda, std::size_t x, double alpha);

struct WiltonExponent {
  std::vector<double> x;
  std::vector<double> sup;
  LinearFit fit;  // log sup against log x
};

WiltonExponent wilton_exponent(std::span<const double> lambda, std::span<const std::size_t> xs, int grid_factor = 4);

struct GammaStarConfig {
  std::int64_t M1 = 64, M2 = 64;
  double z = 0.1;
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;
  int sign1 = 1, sign2 = 1;
  double Zcal = 0.0;  // 0 selects z sqrt(2 (M1 + M2))
  SmoothWindow w2 = SmoothWindow::plateau(0.01, 0.05, 20.0, 100.0);
  bool apply_window = true;

  double resolved_Zcal() const;
};

struct GammaStarResult {
  double norm2 = 0.0;     // sum_b |gamma*(b, z)|^2 by direct convolution
  double parseval = 0.0;  // int_0^1 |F1 F2|^2 by FFT; equals norm2 without the b-window
  double bound = 0.0;     // (M2^{1/2} + z M2)^2 M1
  double ratio = 0.0;
  std::vector<std::complex<double>> gamma;  // gamma*(b, z) for b = b0, b0 + 1, ...
  std::int64_t b0 = 0;
};

// Twisted sequences x_i(m) = l_i(m) (m/M_i)^{-1/4 + i u_i} e^{sign_i i z sqrt m} on M_i <= m <= 2 M_i.
GammaStarResult gamma_star_norm(const GammaStarConfig& cfg, std::span<const double> l1, std::span<const double> l2);

struct PipelineConfig {
  std::int64_t n = 500;
  double H = 50.0;
  double H_prime = 160.0;
  double Q = 300.0;
  double delta = 0.0;  // 0 selects Q^{-3/2}
  int weight1 = 12, weight2 = 12;

  double resolved_delta() const { return delta > 0.0 ? delta : std::pow(Q, -1.5); }
};

struct PipelineResult {
  double E_direct = 0.0;
  double E_reconstructed = 0.0;
  double imag_residual = 0.0;  // |Im| of the reconstruction
  double abs_error = 0.0;
  double relative_error = 0.0;  // abs_error / (1 + |E_direct|)
  double heuristic = 0.0;       // n^2 Q / (delta^{1/2} Lambda)
  double delta = 0.0;
  double Lambda = 0.0;
  std::size_t intervals = 0;
};

// E(n) = sum_h l1(n+h) l2(n-h) W(h/H) against the circle-method detection of the additive
// problem m1 + m2 = 2n with f = l1 W((m - n)/H) and g = l2 V((n - m)/H'), V = 1 on [H/H', 2H/H'].
PipelineResult pipeline_fidelity(const PipelineConfig& cfg, std::span<const double> l1, std::span<const double> l2);

enum class ScalingKind { Pair, Triple };

std::string to_string(ScalingKind kind);
ScalingKind parse_scaling_kind(const std::string& name);

struct ScalingStudy {
  ScalingKind kind = ScalingKind::Pair;
  double theta = 0.0;
  std::vector<double> X, H, value, bound;
  bool degenerate = false;  // some |value| vanishes, so no log-log fit
  LinearFit fit;            // log|value| against log X
  LinearFit bound_fit;      // log bound against log X
};

// H = round(X^theta) per point; base supplies weights, window and the a-sequence.
ScalingStudy scaling_study(std::span<const double> X_list, double theta, ScalingKind kind,
                           const ExperimentConfig& base = {}, const CoefficientSource& source = eigenform_source());

}  // namespace ccl
