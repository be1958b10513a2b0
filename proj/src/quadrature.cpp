#include "ccl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "ccl/errors.hpp"

namespace ccl {

namespace {

struct RuleStorage {
  std::vector<double> nodes, weights;
};

RuleStorage compute_rule(std::size_t n) {
  RuleStorage r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  return r;
}

constexpr std::size_t kOrder = 16;

struct Panel {
  std::complex<double> value;
  double magnitude;  // integral of |f|, sets the rounding floor
  double peak;       // max |f| at the nodes
};

Panel panel(const std::function<std::complex<double>(double)>& f, double a, double b, const GaussRule& rule) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::complex<double> s = 0.0;
  double m = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    std::complex<double> v = f(mid + half * rule.nodes[i]);
    s += rule.weights[i] * v;
    m += rule.weights[i] * std::abs(v);
    peak = std::max(peak, std::abs(v));
  }
  return {half * s, half * m, peak};
}

struct Adaptive {
  const std::function<std::complex<double>(double)>& f;
  const QuadratureOptions& opt;
  GaussRule rule;
  double total_length;
  std::size_t evaluations = 0;
  double error = 0.0;
  double peak = 0.0;  // largest |f| seen; evaluation noise scales with it
  double noise = 0.0;  // relative evaluation noise, grows with the phase magnitude

  std::complex<double> refine(double a, double b, std::complex<double> whole, int depth) {
    double mid = 0.5 * (a + b);
    Panel left = panel(f, a, mid, rule);
    Panel right = panel(f, mid, b, rule);
    evaluations += 2 * kOrder;
    peak = std::max({peak, left.peak, right.peak});
    if (evaluations > opt.max_evaluations)
      throw NumericalError("integrate: evaluation budget exhausted");
    std::complex<double> sum = left.value + right.value;
    double diff = std::abs(sum - whole);
    double budget = opt.abs_tol * (b - a) / total_length;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double floor = std::max(64.0 * eps * (left.magnitude + right.magnitude), noise * peak * (b - a));
    if (diff <= std::max({budget, floor, 1e-290}) || (b - a) < 1e-14 * total_length) {
      error += diff;
      return sum;
    }
    if (depth >= opt.max_depth)
      throw NumericalError("integrate: no convergence on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    return refine(a, mid, left.value, depth + 1) + refine(mid, b, right.value, depth + 1);
  }
};

}  // namespace

GaussRule gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, RuleStorage> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return {it->second.nodes, it->second.weights};
}

QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  if (!(b > a)) return result;
  double length = b - a;
  // 16 nodes per panel, at most two periods per panel.
  double periods = options.max_phase_rate * length / (2.0 * std::numbers::pi);
  auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(periods / 2.0)));
  Adaptive engine{f, options, gauss_legendre(kOrder), length};
  // A phase of size rate * |x| carries an absolute rounding error of about eps times that.
  engine.noise = std::numeric_limits<double>::epsilon() *
                 (16.0 + 4.0 * options.max_phase_rate * std::max(std::abs(a), std::abs(b)));
  std::complex<double> total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    double lo = a + length * static_cast<double>(p) / static_cast<double>(panels);
    double hi = p + 1 == panels ? b : a + length * static_cast<double>(p + 1) / static_cast<double>(panels);
    Panel first = panel(f, lo, hi, engine.rule);
    engine.peak = std::max(engine.peak, first.peak);
    std::complex<double> whole = first.value;
    engine.evaluations += kOrder;
    total += engine.refine(lo, hi, whole, 0);
  }
  result.value = total;
  result.error_estimate = engine.error;
  result.evaluations = engine.evaluations;
  return result;
}

}  // namespace ccl
