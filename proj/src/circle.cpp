#include "ccl/circle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccl/arith.hpp"
#include "ccl/errors.hpp"
#include "ccl/parallel.hpp"
#include "ccl/quadrature.hpp"

namespace ccl {

namespace {

constexpr int kFracBits = 60;
constexpr __int128 kOne = static_cast<__int128>(1) << kFracBits;

// a/(ca 2^60) < b/(cb 2^60); numerators stay below 2^72, products below 2^84.
bool less(const ExactPoint& a, const ExactPoint& b) { return a.num * b.den < b.num * a.den; }
bool equal(const ExactPoint& a, const ExactPoint& b) { return a.num * b.den == b.num * a.den; }

long double difference(const ExactPoint& hi, const ExactPoint& lo) {
  __int128 num = hi.num * lo.den - lo.num * hi.den;
  return static_cast<long double>(num) /
         (static_cast<long double>(hi.den) * static_cast<long double>(lo.den) * static_cast<long double>(kOne));
}

mpz_class to_mpz(__int128 v) {
  bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0ULL));
  mpz_class r = (hi << 64) + lo;
  return negative ? mpz_class(-r) : r;
}

mpq_class to_mpq(const ExactPoint& p) {
  mpz_class den = mpz_class(static_cast<long>(p.den)) << kFracBits;
  mpq_class q(to_mpz(p.num), den);
  q.canonicalize();
  return q;
}

struct Event {
  ExactPoint at;
  double weight;  // +w at a left end, -w at a right end
};

}  // namespace

double ExactPoint::to_double() const {
  return static_cast<double>(static_cast<long double>(num) /
                             (static_cast<long double>(den) * static_cast<long double>(kOne)));
}

FareyCover FareyCover::build(std::span<const std::pair<std::int64_t, double>> weights, double Q, double delta) {
  require(Q >= 1.0, "build_cover: Q must be at least 1");
  require(delta >= 1.0 / (Q * Q) * (1.0 - 1e-12) && delta <= 1.0 / Q * (1.0 + 1e-12),
          "build_cover: delta must lie in [Q^-2, Q^-1]");
  FareyCover cover;
  cover.Q_ = Q;
  cover.delta_units_ = std::llround(std::ldexp(delta, kFracBits));
  require(cover.delta_units_ > 0, "build_cover: delta underflows the 2^-60 grid");
  cover.delta_ = std::ldexp(static_cast<double>(cover.delta_units_), -kFracBits);
  double total_weight = 0.0;
  CompensatedSum lambda;
  for (auto [c, w] : weights) {
    require(c >= 1 && static_cast<double>(c) >= Q * (1.0 - 1e-12) && static_cast<double>(c) <= 2.0 * Q * (1.0 + 1e-12),
            "build_cover: weight at c = " + std::to_string(c) + " outside [Q, 2Q]");
    require(w >= 0.0 && w <= 1.0, "build_cover: weights must lie in [0, 1]");
    if (w == 0.0) continue;
    cover.weights_.emplace_back(c, w);
    total_weight += w;
    std::int64_t phi = euler_phi(c);
    lambda.add(w * static_cast<double>(phi));
    cover.intervals_ += static_cast<std::size_t>(phi);
  }
  require(total_weight > 0.0, "build_cover: empty cover (all weights vanish)");
  std::sort(cover.weights_.begin(), cover.weights_.end());
  cover.Lambda_ = lambda.value();
  cover.sweep();
  return cover;
}

FareyCover FareyCover::build(const std::function<double(double)>& w0, double Q, double delta) {
  require(Q >= 1.0, "build_cover: Q must be at least 1");
  std::vector<std::pair<std::int64_t, double>> weights;
  auto lo = static_cast<std::int64_t>(std::ceil(Q));
  auto hi = static_cast<std::int64_t>(std::floor(2.0 * Q));
  for (std::int64_t c = lo; c <= hi; ++c) weights.emplace_back(c, w0(static_cast<double>(c) / Q));
  return build(weights, Q, delta);
}

void FareyCover::sweep() {
  std::vector<Event> events;
  events.reserve(2 * intervals_ + 8);
  const __int128 span = 2 * static_cast<__int128>(delta_units_);
  for (auto [c, w] : weights_) {
    const __int128 period = static_cast<__int128>(c) * kOne;
    for (const Fraction& fr : reduced_fractions(c)) {
      // Left end d/c - delta reduced into [0, 1); the arc then wraps as often as needed.
      __int128 left = static_cast<__int128>(fr.num) * kOne - static_cast<__int128>(delta_units_) * c;
      left %= period;
      if (left < 0) left += period;
      __int128 remaining = span * c;
      while (remaining > 0) {
        __int128 right = left + remaining;
        if (right <= period) {
          events.push_back({{left, c}, w});
          events.push_back({{right, c}, -w});
          remaining = 0;
        } else {
          events.push_back({{left, c}, w});
          events.push_back({{period, c}, -w});
          remaining = right - period;
          left = 0;
        }
      }
    }
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return less(a.at, b.at); });

  const long double height = 1.0L / (2.0L * static_cast<long double>(delta_) * Lambda_);
  breaks_.clear();
  values_.clear();
  break_approx_.clear();
  std::vector<long double> levels;
  breaks_.push_back({0, 1});
  // Running weight sum with Neumaier compensation; arcs open and close in matching
  // pairs, so drift would otherwise leak into the gaps.
  long double active = 0.0L, correction = 0.0L;
  auto add = [&](long double x) {
    long double t = active + x;
    if (std::fabs(active) >= std::fabs(x)) correction += (active - t) + x;
    else correction += (x - t) + active;
    active = t;
  };
  std::size_t i = 0;
  while (i < events.size() && equal(events[i].at, breaks_.front())) add(events[i++].weight);
  levels.push_back((active + correction) * height);
  while (i < events.size()) {
    ExactPoint at = events[i].at;
    while (i < events.size() && equal(events[i].at, at)) add(events[i++].weight);
    if (equal(at, {kOne, 1})) break;
    breaks_.push_back(at);
    levels.push_back((active + correction) * height);
  }
  breaks_.push_back({kOne, 1});

  long double l2 = 0.0L, l2c = 0.0L, mass = 0.0L, massc = 0.0L;
  auto kahan = [](long double& sum, long double& comp, long double x) {
    long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) comp += (sum - t) + x;
    else comp += (x - t) + sum;
    sum = t;
  };
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
    long double len = difference(breaks_[k + 1], breaks_[k]);
    long double v = levels[k];
    kahan(l2, l2c, (1.0L - v) * (1.0L - v) * len);
    kahan(mass, massc, v * len);
  }
  l2_error_ = static_cast<double>(l2 + l2c);
  mass_ = static_cast<double>(mass + massc);
  for (long double v : levels) values_.push_back(static_cast<double>(v));
  for (const auto& b : breaks_) break_approx_.push_back(b.to_double());
}

double FareyCover::itilde(double alpha) const {
  require(std::isfinite(alpha), "itilde_eval: alpha must be finite");
  double frac = alpha - std::floor(alpha);  // exact for doubles
  if (frac >= 1.0) frac = 0.0;
  // Last break <= frac; doubles decide unless within rounding of a break.
  auto it = std::upper_bound(break_approx_.begin(), break_approx_.end(), frac);
  auto idx = static_cast<std::size_t>(it - break_approx_.begin());
  if (idx == 0) idx = 1;
  std::size_t k = idx - 1;
  const double slack = 1e-12;
  bool near_lower = std::fabs(frac - break_approx_[k]) < slack;
  bool near_upper = k + 1 < break_approx_.size() && std::fabs(frac - break_approx_[k + 1]) < slack;
  if (near_lower || near_upper) {
    mpq_class a(frac);
    // Walk to the exact piece.
    while (k > 0 && a < to_mpq(breaks_[k])) --k;
    while (k + 1 < breaks_.size() - 1 && a >= to_mpq(breaks_[k + 1])) ++k;
  }
  if (k >= values_.size()) k = values_.size() - 1;
  return values_[k];
}

FareyCover build_cover(const std::function<double(double)>& w0, double Q, double delta) {
  return FareyCover::build(w0, Q, delta);
}

double itilde_eval(const FareyCover& cover, double alpha) { return cover.itilde(alpha); }

double l2_error(const FareyCover& cover) { return cover.l2_error(); }

double l2_bound_ratio(const FareyCover& cover) {
  double bound = cover.Q() * cover.Q() / (cover.delta() * cover.Lambda() * cover.Lambda());
  return cover.l2_error() / bound;
}

namespace {

// sum_i values[i] z^{start + i} with z = e(d/c) e(eta). The power z^start is formed from
// the exactly reduced rational phase.
std::complex<double> twisted_sum(const Sequence& s, std::int64_t d, std::int64_t c, std::complex<double> z,
                                 double eta) {
  if (s.values.empty()) return 0.0;
  std::complex<double> acc = 0.0;
  for (auto it = s.values.rbegin(); it != s.values.rend(); ++it) acc = acc * z + *it;
  std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(s.start) % c * d) % c);
  double phase = static_cast<double>(s.start) * eta;
  phase -= std::round(phase);
  std::complex<double> shift = unit_root(r, c) *
                               std::complex<double>(std::cos(2.0 * std::numbers::pi * phase),
                                                    std::sin(2.0 * std::numbers::pi * phase));
  return acc * shift;
}

}  // namespace

std::complex<double> detect_additive(const FareyCover& cover, const Sequence& f, const Sequence& g, std::int64_t n) {
  if (f.values.empty() || g.values.empty()) return 0.0;
  GaussRule rule = gauss_legendre(16);
  const double delta = cover.delta();
  const auto& weights = cover.weights();
  std::vector<std::complex<double>> per_c(weights.size());
  parallel_for(weights.size(), [&](std::size_t ci) {
    auto [c, w] = weights[ci];
    std::vector<std::complex<double>> terms;
    for (const Fraction& fr : reduced_fractions(c)) {
      std::int64_t d = fr.num;
      std::complex<double> base = unit_root(d, c);
      std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(2 * n) % c * d) % c);
      std::complex<double> twist = unit_root(-r, c);
      std::complex<double> arc = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        double eta = delta * rule.nodes[j];
        std::complex<double> e_eta(std::cos(2.0 * std::numbers::pi * eta), std::sin(2.0 * std::numbers::pi * eta));
        std::complex<double> z = base * e_eta;
        double ph = -2.0 * static_cast<double>(n) * eta;
        ph -= std::round(ph);
        std::complex<double> e_n(std::cos(2.0 * std::numbers::pi * ph), std::sin(2.0 * std::numbers::pi * ph));
        arc += rule.weights[j] * twisted_sum(f, d, c, z, eta) * twisted_sum(g, d, c, z, eta) * twist * e_n;
      }
      terms.push_back(arc * delta);
    }
    per_c[ci] = w * pairwise_sum(terms);
  });
  return pairwise_sum(per_c) / (2.0 * delta * cover.Lambda());
}

std::complex<double> exact_additive(const Sequence& f, const Sequence& g, std::int64_t n) {
  std::vector<std::complex<double>> terms;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::int64_t m2 = 2 * n - (f.start + static_cast<std::int64_t>(i));
    if (m2 < g.start || m2 >= g.end()) continue;
    terms.push_back(f.values[i] * g.values[static_cast<std::size_t>(m2 - g.start)]);
  }
  return pairwise_sum(terms);
}

}  // namespace ccl
