#include "ccl/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "ccl/arith.hpp"
#include "ccl/errors.hpp"
#include "ccl/parallel.hpp"
#include "ccl/quadrature.hpp"

namespace ccl {

namespace {

constexpr double kPi = std::numbers::pi;

// Dual integral envelope for the bump, measured: |int V J(A sqrt x)| <= exp(-2 sqrt(A/2.8)).
double dual_envelope(double A) { return std::exp(-2.0 * std::sqrt(A / 2.8)); }

double argument_scale(std::int64_t n, double N, std::int64_t c) {
  return 4.0 * kPi * std::sqrt(static_cast<double>(n) * N) / static_cast<double>(c);
}

void validate(const VoronoiInstance& inst) {
  require(inst.c >= 1, "voronoi: c must be positive");
  require(std::gcd(inst.b, inst.c) == 1, "voronoi: gcd(b, c) must be 1");
  require(inst.N > 0.0, "voronoi: N must be positive");
  require(inst.weight >= 2 && inst.weight % 2 == 0, "voronoi: weight must be even");
}

}  // namespace

std::size_t default_truncation(int weight, std::int64_t c, double N) {
  (void)weight;
  // exp(-2 sqrt(A*/2.8)) = 1e-16.
  const double half_log = 8.0 * std::log(10.0);
  const double a_star = 2.8 * half_log * half_log;
  double n = std::pow(a_star * static_cast<double>(c) / (4.0 * kPi), 2) / N;
  return 2 * static_cast<std::size_t>(std::ceil(std::max(n, 16.0)));
}

std::size_t required_coefficients(const VoronoiInstance& inst, bool doubling) {
  std::size_t trunc = inst.rhs_truncation ? inst.rhs_truncation : default_truncation(inst.weight, inst.c, inst.N);
  auto lhs_top = static_cast<std::size_t>(std::floor(inst.N * inst.V.support_hi()));
  return std::max(lhs_top, doubling ? 2 * trunc : trunc);
}

std::complex<double> voronoi_lhs(const VoronoiInstance& inst) {
  validate(inst);
  auto lo = static_cast<std::int64_t>(std::ceil(inst.N * inst.V.support_lo()));
  auto hi = static_cast<std::int64_t>(std::floor(inst.N * inst.V.support_hi()));
  lo = std::max<std::int64_t>(lo, 1);
  require(hi < static_cast<std::int64_t>(inst.lambda.size()), "voronoi_lhs: insufficient coefficients");
  std::vector<std::complex<double>> terms;
  for (std::int64_t n = lo; n <= hi; ++n) {
    std::complex<double> v = inst.V.at(static_cast<double>(n) / inst.N);
    if (v == 0.0) continue;
    terms.push_back(inst.lambda[static_cast<std::size_t>(n)] * unit_root(inst.b * n % inst.c, inst.c) * v);
  }
  return pairwise_sum(terms);
}

namespace {

VoronoiSide dual_sum(const VoronoiInstance& inst, std::size_t trunc) {
  require(trunc < inst.lambda.size(), "voronoi_rhs: insufficient coefficients for the dual sum");
  std::int64_t b_bar = mod_inverse(((inst.b % inst.c) + inst.c) % inst.c, inst.c);
  BesselKernel bessel(inst.weight - 1);
  std::vector<std::complex<double>> terms(trunc);
  std::vector<double> errors(trunc);
  const double lo = inst.V.support_lo(), hi = inst.V.support_hi();
  parallel_for(trunc, [&](std::size_t i) {
    auto n = static_cast<std::int64_t>(i + 1);
    double A = argument_scale(n, inst.N, inst.c);
    QuadratureOptions opt;
    opt.abs_tol = inst.quadrature_tol;
    opt.max_phase_rate = A / (2.0 * std::sqrt(lo)) + 2.0 * kPi * std::abs(inst.V.eta());
    auto r = integrate(
        [&](double x) {
          std::complex<double> v = inst.V.at(x);
          if (v == 0.0) return v;
          return v * bessel(A * std::sqrt(x));
        },
        lo, hi, opt);
    terms[i] = inst.lambda[i + 1] * unit_root(-(b_bar * n % inst.c), inst.c) * r.value;
    errors[i] = std::abs(inst.lambda[i + 1]) * r.error_estimate;
  });
  std::complex<double> ik = (inst.weight / 2) % 2 == 0 ? 1.0 : -1.0;
  double scale = inst.N / static_cast<double>(inst.c) * 2.0 * kPi;
  VoronoiSide side;
  side.value = scale * ik * pairwise_sum(terms);
  side.terms = trunc;
  side.quadrature_error = scale * pairwise_sum(errors);
  // Neglected tail with |lambda(n)| <= tau(n) <= 2 sqrt(n).
  double tail = 0.0;
  for (auto n = static_cast<std::int64_t>(trunc) + 1;; ++n) {
    double term = 2.0 * std::sqrt(static_cast<double>(n)) * dual_envelope(argument_scale(n, inst.N, inst.c));
    tail += term;
    if (term < 1e-30 || n > static_cast<std::int64_t>(trunc) * 64) break;
  }
  side.truncation_estimate = scale * tail;
  return side;
}

}  // namespace

VoronoiSide voronoi_rhs(const VoronoiInstance& inst) {
  validate(inst);
  if (inst.V.kind() == SmoothWindow::Kind::Zero || inst.V.amplitude() == 0.0) return {};
  std::size_t trunc = inst.rhs_truncation ? inst.rhs_truncation : default_truncation(inst.weight, inst.c, inst.N);
  return dual_sum(inst, trunc);
}

VoronoiCheck voronoi_check(const VoronoiInstance& inst, bool doubling) {
  VoronoiCheck out;
  out.lhs = voronoi_lhs(inst);
  out.rhs = voronoi_rhs(inst);
  out.relative_error = std::abs(out.lhs - out.rhs.value) / (std::abs(out.lhs) + std::abs(out.rhs.value) + 1e-300);
  if (doubling && out.rhs.terms > 0) {
    out.rhs_doubled = dual_sum(inst, 2 * out.rhs.terms).value;
    out.doubling_change = std::abs(out.rhs_doubled - out.rhs.value);
  } else {
    out.rhs_doubled = out.rhs.value;
  }
  return out;
}

}  // namespace ccl
