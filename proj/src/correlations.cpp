#include "ccl/correlations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "ccl/circle.hpp"
#include "ccl/coeffs.hpp"
#include "ccl/errors.hpp"
#include "ccl/parallel.hpp"
#include "fft.hpp"

namespace ccl {

namespace {

std::int64_t first_n(double X) { return static_cast<std::int64_t>(std::ceil(X)); }
std::int64_t last_n(double X) { return static_cast<std::int64_t>(std::floor(2.0 * X)); }

void require_index(std::span<const double> v, std::int64_t lo, std::int64_t hi, const char* what) {
  require(lo >= 0 && hi < static_cast<std::int64_t>(v.size()),
          std::string(what) + ": coefficient table does not cover [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]");
}

double norm_on(std::span<const double> a, double X) {
  std::vector<double> sq;
  for (std::int64_t n = first_n(X); n <= last_n(X); ++n) sq.push_back(a[static_cast<std::size_t>(n)] * a[static_cast<std::size_t>(n)]);
  return std::sqrt(pairwise_sum(sq));
}

// Moebius function for 1..n by a linear sieve.
std::vector<int> moebius_table(std::int64_t n) {
  std::vector<int> mu(static_cast<std::size_t>(n + 1), 1);
  std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
  std::vector<std::int64_t> primes;
  if (n >= 0) mu[0] = 0;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (!composite[static_cast<std::size_t>(i)]) {
      primes.push_back(i);
      mu[static_cast<std::size_t>(i)] = -1;
    }
    for (auto p : primes) {
      if (p * i > n) break;
      composite[static_cast<std::size_t>(p * i)] = true;
      if (i % p == 0) {
        mu[static_cast<std::size_t>(p * i)] = 0;
        break;
      }
      mu[static_cast<std::size_t>(p * i)] = -mu[static_cast<std::size_t>(i)];
    }
  }
  return mu;
}

// sum_{n in [lo, hi]} a(n) sum_{d <= D} r_d(2n)/d^2 (log n + 2 gamma - 2 log d)^2, via
// r_d(m) = sum_{e | (d, m)} e mu(d/e) and B_j(e) = sum_{t <= D/e} mu(t) log(et)^j / (et)^2.
double main_sum(std::span<const double> a, std::int64_t lo, std::int64_t hi, std::int64_t D,
                const std::vector<int>& mu) {
  const double two_gamma = 2.0 * std::numbers::egamma;
  auto count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> A0(count, 0.0), A1(count, 0.0), A2(count, 0.0);
  for (std::int64_t e = 1; e <= D; ++e) {
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::int64_t t = 1; t <= D / e; ++t) {
      int m = mu[static_cast<std::size_t>(t)];
      if (m == 0) continue;
      double d = static_cast<double>(e * t), l = std::log(d);
      double w = m / (d * d);
      b0 += w;
      b1 += w * l;
      b2 += w * l * l;
    }
    // e | 2n  <=>  n divisible by e / gcd(e, 2).
    std::int64_t step = e % 2 == 0 ? e / 2 : e;
    std::int64_t start = (lo + step - 1) / step * step;
    double ed = static_cast<double>(e);
    for (std::int64_t n = start; n <= hi; n += step) {
      auto i = static_cast<std::size_t>(n - lo);
      A0[i] += ed * b0;
      A1[i] += ed * b1;
      A2[i] += ed * b2;
    }
  }
  std::vector<double> terms(count);
  for (std::size_t i = 0; i < count; ++i) {
    double L = std::log(static_cast<double>(lo) + static_cast<double>(i)) + two_gamma;
    terms[i] = a[static_cast<std::size_t>(lo) + i] * (L * L * A0[i] - 4.0 * L * A1[i] + 4.0 * A2[i]);
  }
  return pairwise_sum(terms);
}

// sum_n |a(n)| sum_{d > D} |r_d(2n)|/d^2 (log n + 2 gamma - 2 log d)^2 bounded through
// |r_d(m)| <= sum_{e | (d, m)} e and the decreasing majorant (b + 2 log t)^2 / t^2 in t = d/e.
double divisor_tail_bound(std::span<const double> a, std::int64_t lo, std::int64_t hi, std::int64_t D) {
  const double two_gamma = 2.0 * std::numbers::egamma;
  auto count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> tail(count, 0.0);
  for (std::int64_t e = 1; e <= 2 * hi; ++e) {
    std::int64_t step = e % 2 == 0 ? e / 2 : e;
    std::int64_t start = (lo + step - 1) / step * step;
    double T1 = static_cast<double>(D / e + 1);
    double le = 2.0 * std::log(static_cast<double>(e));
    for (std::int64_t n = start; n <= hi; n += step) {
      double b = std::log(static_cast<double>(n)) + two_gamma + le;
      double u = b + 2.0 * std::log(T1);
      tail[static_cast<std::size_t>(n - lo)] += (u * u / (T1 * T1) + (u * u + 4.0 * u + 8.0) / T1) / static_cast<double>(e);
    }
  }
  for (std::size_t i = 0; i < count; ++i) tail[i] *= std::abs(a[static_cast<std::size_t>(lo) + i]);
  return pairwise_sum(tail);
}

std::complex<double> expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace

std::string to_string(TestSequence s) {
  switch (s) {
    case TestSequence::Ones: return "ones";
    case TestSequence::Rademacher: return "rademacher";
    case TestSequence::Lambda3: return "lambda3";
  }
  return "ones";
}

TestSequence parse_test_sequence(const std::string& name) {
  if (name == "ones") return TestSequence::Ones;
  if (name == "rademacher") return TestSequence::Rademacher;
  if (name == "lambda3") return TestSequence::Lambda3;
  throw ContractError("unknown test sequence '" + name + "' (ones, rademacher, lambda3)");
}

std::string to_string(ScalingKind kind) { return kind == ScalingKind::Pair ? "pair" : "triple"; }

ScalingKind parse_scaling_kind(const std::string& name) {
  if (name == "pair") return ScalingKind::Pair;
  if (name == "triple") return ScalingKind::Triple;
  throw ContractError("unknown scaling kind '" + name + "' (pair, triple)");
}

void ExperimentConfig::validate() const {
  require(std::isfinite(X) && std::isfinite(H), "experiment: X and H must be finite");
  require(H >= 1.0, "experiment: H must be at least 1");
  require(H <= X / 3.0 * (1.0 + 1e-12), "experiment: H must not exceed X/3");
  double Hp = resolved_H_prime();
  require(Hp >= H * (1.0 - 1e-12) && Hp <= X / 3.0 * (1.0 + 1e-12), "experiment: need H <= H' <= X/3");
  for (int k : weights) require(k == 12 || k == 16, "experiment: weights must be 12 or 16");
}

std::size_t ExperimentConfig::table_length() const {
  return static_cast<std::size_t>(std::floor(2.0 * X + 2.0 * resolved_H_prime())) + 1;
}

CoefficientSource eigenform_source() {
  return [](int weight, std::size_t upto) { return eigenvalue_table(weight, upto); };
}

std::vector<double> test_sequence(TestSequence kind, std::uint64_t seed, std::size_t upto,
                                  const CoefficientSource& source, int lambda_weight) {
  std::vector<double> a(upto + 1, 0.0);
  switch (kind) {
    case TestSequence::Ones:
      std::fill(a.begin() + 1, a.end(), 1.0);
      break;
    case TestSequence::Rademacher: {
      std::mt19937_64 rng(seed);
      for (std::size_t n = 1; n <= upto; ++n) a[n] = (rng() >> 63) != 0 ? 1.0 : -1.0;
      break;
    }
    case TestSequence::Lambda3: {
      auto lam = source(lambda_weight, upto);
      require(lam.size() > upto, "test_sequence: coefficient source returned a short table");
      std::copy(lam.begin(), lam.begin() + static_cast<std::ptrdiff_t>(upto + 1), a.begin());
      break;
    }
  }
  return a;
}

ShiftWeights ShiftWeights::from_window(const SmoothWindow& W, double H) {
  require(H > 0.0, "shift weights: H must be positive");
  ShiftWeights s;
  auto lo = static_cast<std::int64_t>(std::ceil(W.support_lo() * H));
  auto hi = static_cast<std::int64_t>(std::floor(W.support_hi() * H));
  s.h0 = lo;
  for (std::int64_t h = lo; h <= hi; ++h) s.w.push_back(W(static_cast<double>(h) / H));
  return s;
}

ShiftWeights ShiftWeights::reflected() const {
  ShiftWeights r;
  r.h0 = -(h0 + static_cast<std::int64_t>(w.size()) - 1);
  r.w.assign(w.rbegin(), w.rend());
  return r;
}

bool ShiftWeights::all_zero() const {
  return std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; });
}

double pair_sum(std::span<const double> a, std::span<const double> l1, std::span<const double> l2, double X,
                const ShiftWeights& shifts) {
  if (shifts.w.empty()) return 0.0;
  std::int64_t lo = first_n(X), hi = last_n(X);
  std::int64_t hmin = shifts.h0, hmax = shifts.h0 + static_cast<std::int64_t>(shifts.w.size()) - 1;
  require_index(a, lo, hi, "pair_sum");
  require_index(l1, lo + hmin, hi + hmax, "pair_sum");
  require_index(l2, lo - hmax, hi - hmin, "pair_sum");
  std::vector<double> per_h(shifts.w.size(), 0.0);
  parallel_for(shifts.w.size(), [&](std::size_t i) {
    if (shifts.w[i] == 0.0) return;
    std::int64_t h = shifts.h0 + static_cast<std::int64_t>(i);
    std::vector<double> terms(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n)
      terms[static_cast<std::size_t>(n - lo)] =
          a[static_cast<std::size_t>(n)] * l1[static_cast<std::size_t>(n + h)] * l2[static_cast<std::size_t>(n - h)];
    per_h[i] = shifts.w[i] * pairwise_sum(terms);
  });
  return pairwise_sum(per_h);
}

double triple_sum(std::span<const double> l1, std::span<const double> l2, std::span<const double> l3, double X,
                  const ShiftWeights& shifts) {
  if (shifts.w.empty()) return 0.0;
  std::int64_t lo = first_n(X), hi = last_n(X);
  std::int64_t hmin = shifts.h0, hmax = shifts.h0 + static_cast<std::int64_t>(shifts.w.size()) - 1;
  require_index(l1, lo - hmax, hi - hmin, "triple_sum");
  require_index(l2, lo, hi, "triple_sum");
  require_index(l3, lo + hmin, hi + hmax, "triple_sum");
  std::vector<double> per_h(shifts.w.size(), 0.0);
  parallel_for(shifts.w.size(), [&](std::size_t i) {
    if (shifts.w[i] == 0.0) return;
    std::int64_t h = shifts.h0 + static_cast<std::int64_t>(i);
    std::vector<double> terms(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n)
      terms[static_cast<std::size_t>(n - lo)] =
          l1[static_cast<std::size_t>(n - h)] * l2[static_cast<std::size_t>(n)] * l3[static_cast<std::size_t>(n + h)];
    per_h[i] = shifts.w[i] * pairwise_sum(terms);
  });
  return pairwise_sum(per_h);
}

CorrelationResult shifted_pair_correlation(const ExperimentConfig& cfg, const CoefficientSource& source) {
  cfg.validate();
  std::size_t len = cfg.table_length();
  auto shifts = ShiftWeights::from_window(cfg.W, cfg.H);
  require(!shifts.all_zero(), "shifted_pair_correlation: W(h/H) vanishes at every integer h");
  auto l1 = source(cfg.weights[0], len);
  auto l2 = source(cfg.weights[1], len);
  auto a = test_sequence(cfg.a, cfg.seed, len, source, cfg.weights[2]);
  CorrelationResult r;
  r.value = pair_sum(a, l1, l2, cfg.X, shifts);
  r.a_norm = norm_on(a, cfg.X);
  r.bound = cfg.X / cfg.H * (std::sqrt(cfg.X * cfg.H) + cfg.X / std::sqrt(cfg.H)) * r.a_norm;
  r.bound_ratio = r.bound > 0.0 ? std::abs(r.value) / r.bound : 0.0;
  r.shifts = shifts.w.size();
  return r;
}

CorrelationResult triple_correlation(const ExperimentConfig& cfg, const CoefficientSource& source) {
  cfg.validate();
  std::size_t len = cfg.table_length();
  auto shifts = ShiftWeights::from_window(cfg.W, cfg.H);
  require(!shifts.all_zero(), "triple_correlation: W(h/H) vanishes at every integer h");
  auto l1 = source(cfg.weights[0], len);
  auto l2 = source(cfg.weights[1], len);
  auto l3 = source(cfg.weights[2], len);
  CorrelationResult r;
  r.value = triple_sum(l1, l2, l3, cfg.X, shifts);
  r.bound = std::min(cfg.X * cfg.H, cfg.X * cfg.X / std::sqrt(cfg.H));
  r.bound_ratio = std::abs(r.value) / r.bound;
  r.shifts = shifts.w.size();
  return r;
}

double divisor_main_sum(std::span<const double> a, double X, std::int64_t d_max) {
  require(d_max >= 1, "divisor_main_sum: d_max must be positive");
  require(X >= 1.0, "divisor_main_sum: X must be at least 1");
  require_index(a, first_n(X), last_n(X), "divisor_main_sum");
  return main_sum(a, first_n(X), last_n(X), d_max, moebius_table(d_max));
}

DivisorMainTermResult divisor_main_term(const ExperimentConfig& cfg, std::int64_t d_max,
                                        const CoefficientSource& source) {
  cfg.validate();
  require(d_max >= 2, "divisor_main_term: d_max must be at least 2");
  auto shifts = ShiftWeights::from_window(cfg.W, cfg.H);
  require(!shifts.all_zero(), "divisor_main_term: W(h/H) vanishes at every integer h");
  std::int64_t lo = first_n(cfg.X), hi = last_n(cfg.X);
  std::int64_t hmax = shifts.h0 + static_cast<std::int64_t>(shifts.w.size()) - 1;
  auto len = static_cast<std::size_t>(hi + hmax + 1);
  auto tau64 = divisor_sieve(2, len);
  std::vector<double> tau(tau64.begin(), tau64.end());
  auto a = test_sequence(cfg.a, cfg.seed, len, source, cfg.weights[2]);

  DivisorMainTermResult r;
  r.d_max = d_max;
  r.exact_lhs = pair_sum(a, tau, tau, cfg.X, shifts);
  double scale = cfg.H * mellin_at(cfg.W, 1.0).real();
  auto mu = moebius_table(d_max);
  double full = main_sum(a, lo, hi, d_max, mu);
  double half = main_sum(a, lo, hi, d_max / 2, mu);
  r.main_term = scale * full;
  require(r.main_term != 0.0, "divisor_main_term: main term vanishes");
  r.last_block_share = std::abs(full - half) / std::abs(full);
  r.tail_bound = divisor_tail_bound(a, lo, hi, d_max) / std::abs(full);
  r.relative_deviation = std::abs(r.exact_lhs - r.main_term) / std::abs(r.main_term);
  require(r.last_block_share < 0.01, "divisor_main_term: d_max too small, terms with d in (d_max/2, d_max] carry " +
                                         std::to_string(r.last_block_share * 100.0) + "% of the main term");
  return r;
}

std::complex<double> twisted_partial_sum(std::span<const double> lambda, std::size_t x, double alpha) {
  require(x < lambda.size(), "twisted_partial_sum: x exceeds the coefficient table");
  std::vector<std::complex<double>> terms;
  terms.reserve(x);
  double frac = alpha - std::floor(alpha);
  for (std::size_t n = 1; n <= x; ++n) {
    double phase = std::fmod(static_cast<double>(n) * frac, 1.0);
    terms.push_back(lambda[n] * expi(2.0 * std::numbers::pi * phase));
  }
  return pairwise_sum(terms);
}

WiltonResult wilton_sup(std::span<const double> lambda, std::size_t x, int grid_factor) {
  require(x >= 1 && x < lambda.size(), "wilton_sup: x must lie in [1, table length)");
  require(grid_factor >= 4, "wilton_sup: grid_factor must be at least 4");
  std::size_t L = std::bit_ceil(static_cast<std::size_t>(grid_factor) * x);
  std::vector<std::complex<double>> data(L, 0.0);
  for (std::size_t n = 1; n <= x; ++n) data[n] = lambda[n];
  detail::fft(data, +1);
  WiltonResult r;
  r.grid = L;
  r.dc = data[0].real();
  for (std::size_t j = 0; j < L; ++j) {
    double m = std::abs(data[j]);
    if (m > r.sup) {
      r.sup = m;
      r.alpha = static_cast<double>(j) / static_cast<double>(L);
    }
  }
  return r;
}

WiltonExponent wilton_exponent(std::span<const double> lambda, std::span<const std::size_t> xs, int grid_factor) {
  require(xs.size() >= 2, "wilton_exponent: need at least two x values");
  WiltonExponent e;
  std::vector<double> lx, ls;
  for (auto x : xs) {
    auto r = wilton_sup(lambda, x, grid_factor);
    e.x.push_back(static_cast<double>(x));
    e.sup.push_back(r.sup);
    lx.push_back(std::log(static_cast<double>(x)));
    ls.push_back(std::log(r.sup));
  }
  e.fit = fit_line(lx, ls);
  return e;
}

double GammaStarConfig::resolved_Zcal() const {
  return Zcal > 0.0 ? Zcal : z * std::sqrt(2.0 * static_cast<double>(M1 + M2));
}

GammaStarResult gamma_star_norm(const GammaStarConfig& cfg, std::span<const double> l1, std::span<const double> l2) {
  require(cfg.M1 >= 1 && cfg.M2 >= 1, "gamma_star_norm: M1, M2 must be at least 1");
  require(cfg.z > 0.0, "gamma_star_norm: z must be positive");
  require(std::abs(cfg.sign1) == 1 && std::abs(cfg.sign2) == 1, "gamma_star_norm: signs must be +1 or -1");
  require(static_cast<std::int64_t>(l1.size()) > 2 * cfg.M1 && static_cast<std::int64_t>(l2.size()) > 2 * cfg.M2,
          "gamma_star_norm: coefficient tables must cover 2 M1 and 2 M2");
  auto twisted = [&](std::span<const double> l, std::int64_t M, double u, int sign) {
    std::vector<std::complex<double>> x(static_cast<std::size_t>(M + 1));
    for (std::int64_t m = M; m <= 2 * M; ++m) {
      double r = static_cast<double>(m) / static_cast<double>(M);
      x[static_cast<std::size_t>(m - M)] = l[static_cast<std::size_t>(m)] * std::pow(r, -0.25) *
                                           expi(u * std::log(r) + sign * cfg.z * std::sqrt(static_cast<double>(m)));
    }
    return x;
  };
  auto x1 = twisted(l1, cfg.M1, cfg.u1, cfg.sign1);
  auto x2 = twisted(l2, cfg.M2, cfg.u2, cfg.sign2);

  GammaStarResult r;
  r.b0 = cfg.M1 + cfg.M2;
  std::size_t nb = x1.size() + x2.size() - 1;
  r.gamma.assign(nb, 0.0);
  const double Z = cfg.resolved_Zcal();
  const double Msum = static_cast<double>(cfg.M1 + cfg.M2);
  std::vector<double> sq(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    std::vector<std::complex<double>> terms;
    std::size_t i_lo = k >= x2.size() ? k - x2.size() + 1 : 0;
    for (std::size_t i = i_lo; i < x1.size() && i <= k; ++i) terms.push_back(x1[i] * x2[k - i]);
    std::complex<double> conv = pairwise_sum(terms);
    double b = static_cast<double>(r.b0) + static_cast<double>(k);
    double arg = std::sqrt(2.0 * b) * cfg.z / Z;
    std::complex<double> pre = expi(-2.0 * cfg.u3 * std::log(arg) + cfg.u3 * std::log(b / Msum));
    if (cfg.apply_window) pre *= cfg.w2(arg);
    r.gamma[k] = pre * conv;
    sq[k] = std::norm(r.gamma[k]);
  }
  r.norm2 = pairwise_sum(sq);

  // Discrete Parseval: the product of the two transforms carries no aliasing once the
  // length exceeds the top frequency 2(M1 + M2).
  std::size_t L = std::bit_ceil(static_cast<std::size_t>(2 * (cfg.M1 + cfg.M2) + 1));
  std::vector<std::complex<double>> F1(L, 0.0), F2(L, 0.0);
  for (std::size_t i = 0; i < x1.size(); ++i) F1[static_cast<std::size_t>(cfg.M1) + i] = x1[i];
  for (std::size_t i = 0; i < x2.size(); ++i) F2[static_cast<std::size_t>(cfg.M2) + i] = x2[i];
  detail::fft(F1, +1);
  detail::fft(F2, +1);
  std::vector<double> prod(L);
  for (std::size_t j = 0; j < L; ++j) prod[j] = std::norm(F1[j] * F2[j]);
  r.parseval = pairwise_sum(prod) / static_cast<double>(L);

  double root = std::sqrt(static_cast<double>(cfg.M2)) + cfg.z * static_cast<double>(cfg.M2);
  r.bound = root * root * static_cast<double>(cfg.M1);
  r.ratio = r.norm2 / r.bound;
  return r;
}

PipelineResult pipeline_fidelity(const PipelineConfig& cfg, std::span<const double> l1, std::span<const double> l2) {
  require(cfg.Q >= 10.0, "pipeline_fidelity: Q must be at least 10");
  require(cfg.H > 0.0 && cfg.H_prime >= cfg.H, "pipeline_fidelity: need 0 < H <= H'");
  const double delta = cfg.resolved_delta();
  require(delta >= 1.0 / (cfg.Q * cfg.Q) * (1.0 - 1e-12) && delta <= 1.0 / cfg.Q * (1.0 + 1e-12),
          "pipeline_fidelity: delta must lie in [Q^-2, Q^-1]");
  const std::int64_t n = cfg.n;
  auto shifts = ShiftWeights::from_window(SmoothWindow::bump(), cfg.H);

  // V = 1 on [a, b] covers h/H' for every h in the support of W(h/H).
  double a = cfg.H / cfg.H_prime, b = 2.0 * cfg.H / cfg.H_prime;
  auto V = SmoothWindow::plateau(a / 2.0, a, b, b + a / 2.0);
  auto m2_lo = static_cast<std::int64_t>(std::ceil(static_cast<double>(n) - cfg.H_prime * V.support_hi()));
  auto m2_hi = static_cast<std::int64_t>(std::floor(static_cast<double>(n) - cfg.H_prime * V.support_lo()));
  std::int64_t h_hi = shifts.h0 + static_cast<std::int64_t>(shifts.w.size()) - 1;
  require(m2_lo >= 1, "pipeline_fidelity: n too small for the localization scale H'");
  require_index(l1, n + shifts.h0, n + h_hi, "pipeline_fidelity");
  require_index(l2, m2_lo, m2_hi, "pipeline_fidelity");

  PipelineResult r;
  std::vector<double> direct;
  Sequence f, g;
  f.start = n + shifts.h0;
  for (std::size_t i = 0; i < shifts.w.size(); ++i) {
    std::int64_t h = shifts.h0 + static_cast<std::int64_t>(i);
    direct.push_back(l1[static_cast<std::size_t>(n + h)] * l2[static_cast<std::size_t>(n - h)] * shifts.w[i]);
    f.values.emplace_back(l1[static_cast<std::size_t>(n + h)] * shifts.w[i]);
  }
  r.E_direct = pairwise_sum(direct);
  g.start = m2_lo;
  for (std::int64_t m = m2_lo; m <= m2_hi; ++m)
    g.values.emplace_back(l2[static_cast<std::size_t>(m)] * V(static_cast<double>(n - m) / cfg.H_prime));

  auto cover = build_cover([](double x) { return SmoothWindow::bump()(x); }, cfg.Q, delta);
  std::complex<double> rec = detect_additive(cover, f, g, n);
  r.E_reconstructed = rec.real();
  r.imag_residual = std::abs(rec.imag());
  r.abs_error = std::abs(r.E_direct - r.E_reconstructed);
  r.relative_error = r.abs_error / (1.0 + std::abs(r.E_direct));
  r.delta = cover.delta();
  r.Lambda = cover.Lambda();
  r.intervals = cover.interval_count();
  double X = static_cast<double>(n);
  r.heuristic = X * X * cfg.Q / (std::sqrt(r.delta) * r.Lambda);
  return r;
}

ScalingStudy scaling_study(std::span<const double> X_list, double theta, ScalingKind kind, const ExperimentConfig& base,
                           const CoefficientSource& source) {
  require(X_list.size() >= 4, "scaling_study: need at least 4 X values");
  require(std::is_sorted(X_list.begin(), X_list.end()) &&
              std::adjacent_find(X_list.begin(), X_list.end()) == X_list.end(),
          "scaling_study: X values must be strictly ascending");
  require(theta > 0.0 && theta <= 1.0, "scaling_study: theta must lie in (0, 1]");
  ScalingStudy s;
  s.kind = kind;
  s.theta = theta;
  for (double X : X_list) {
    ExperimentConfig cfg = base;
    cfg.X = X;
    cfg.H = std::round(std::pow(X, theta));
    cfg.H_prime = 0.0;
    auto r = kind == ScalingKind::Pair ? shifted_pair_correlation(cfg, source) : triple_correlation(cfg, source);
    s.X.push_back(X);
    s.H.push_back(cfg.H);
    s.value.push_back(r.value);
    s.bound.push_back(r.bound);
  }
  std::vector<double> lx, lv, lb;
  for (std::size_t i = 0; i < s.X.size(); ++i) {
    if (s.value[i] == 0.0 || s.bound[i] <= 0.0) s.degenerate = true;
    lx.push_back(std::log(s.X[i]));
    lv.push_back(std::log(std::abs(s.value[i])));
    lb.push_back(std::log(s.bound[i]));
  }
  if (!s.degenerate) {
    s.fit = fit_line(lx, lv);
    s.bound_fit = fit_line(lx, lb);
  }
  return s;
}

}  // namespace ccl
