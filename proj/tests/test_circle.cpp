#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "ccl/circle.hpp"
#include "ccl/errors.hpp"
#include "ccl/windows.hpp"
#include "doctest.h"

using namespace ccl;

namespace {

double bump(double x) { return x <= 1.0 || x >= 2.0 ? 0.0 : std::exp(-1.0 / ((x - 1.0) * (2.0 - x))); }

std::int64_t phi_by_count(std::int64_t c) {
  std::int64_t n = 0;
  for (std::int64_t d = 1; d <= c; ++d) n += std::gcd(d, c) == 1;
  return n;
}

FareyCover half_cover() {
  std::vector<std::pair<std::int64_t, double>> w{{2, 1.0}};
  return FareyCover::build(w, 2.0, 0.25);
}

Sequence random_signs(std::mt19937_64& gen, std::int64_t start, std::size_t len) {
  Sequence s;
  s.start = start;
  for (std::size_t i = 0; i < len; ++i) s.values.emplace_back((gen() >> 63) ? 1.0 : -1.0);
  return s;
}

}  // namespace

TEST_CASE("single-fraction cover") {
  auto c = half_cover();
  CHECK(c.Lambda() == 1.0);
  CHECK(c.interval_count() == 1);
  CHECK(c.delta() == 0.25);
  CHECK(c.itilde(0.1) == 0.0);
  CHECK(c.itilde(0.5) == 2.0);
  CHECK(c.itilde(1.5) == 2.0);
  CHECK(c.itilde(-0.5) == 2.0);
  // Arcs are closed on the left and open on the right.
  CHECK(c.itilde(0.25) == 2.0);
  CHECK(c.itilde(0.75) == 0.0);
  CHECK(c.itilde(std::nextafter(0.25, 0.0)) == 0.0);
  CHECK(c.itilde(std::nextafter(0.75, 0.0)) == 2.0);
  double delta = 0.25, height = 1.0 / (2.0 * delta);
  double closed_form = (1.0 - 2.0 * delta) + 2.0 * delta * (1.0 - height) * (1.0 - height);
  CHECK(c.l2_error() == doctest::Approx(closed_form).epsilon(1e-15));
  CHECK(c.mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cover contracts") {
  CHECK_THROWS_AS(build_cover([](double) { return 0.0; }, 10.0, 0.01), ContractError);
  CHECK_THROWS_AS(build_cover(bump, 10.0, 0.5), ContractError);
  CHECK_THROWS_AS(build_cover(bump, 10.0, 1e-3), ContractError);
  CHECK_THROWS_AS(build_cover(bump, 0.5, 1.0), ContractError);
  std::vector<std::pair<std::int64_t, double>> outside{{25, 1.0}};
  CHECK_THROWS_AS(FareyCover::build(outside, 10.0, 0.05), ContractError);
}

TEST_CASE("bump cover at Q = 50") {
  const double Q = 50.0, delta = std::pow(Q, -1.5);
  auto c = build_cover(bump, Q, delta);
  double lambda = 0.0;
  std::size_t count = 0;
  for (std::int64_t q = 50; q <= 100; ++q) {
    double w = bump(static_cast<double>(q) / Q);
    lambda += w * static_cast<double>(phi_by_count(q));
    if (w > 0.0) count += static_cast<std::size_t>(phi_by_count(q));
  }
  CHECK(std::abs(c.Lambda() - lambda) <= 0.01 * lambda);
  CHECK(c.Lambda() == doctest::Approx(lambda).epsilon(1e-13));
  CHECK(c.interval_count() == count);
  for (auto [q, w] : c.weights()) {
    CHECK(q >= 50);
    CHECK(q <= 100);
    CHECK(w > 0.0);
  }
  CHECK(std::abs(c.mass() - 1.0) < 1e-12);
}

TEST_CASE("Monte-Carlo mass") {
  auto c = build_cover(bump, 30.0, std::pow(30.0, -1.5));
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 1000000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = c.itilde(u(gen));
    s += v;
    s2 += v * v;
  }
  double mean = s / n, sd = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 1.0) <= 3.0 * sd);
}

TEST_CASE("piecewise description matches point evaluation") {
  auto c = build_cover(bump, 12.0, std::pow(12.0, -1.5));
  const auto& breaks = c.breaks();
  const auto& values = c.values();
  REQUIRE(breaks.size() == values.size() + 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double lo = breaks[i].to_double(), hi = breaks[i + 1].to_double();
    if (hi - lo < 1e-9) continue;
    CHECK(c.itilde(0.5 * (lo + hi)) == values[i]);
  }
}

TEST_CASE("exact L2 error against a Riemann sum") {
  const double Q = 25.0;
  auto c = build_cover(bump, Q, std::pow(Q, -1.5));
  const int M = 2000000;
  double s = 0.0;
  for (int i = 0; i < M; ++i) {
    double d = 1.0 - c.itilde((i + 0.5) / M);
    s += d * d;
  }
  s /= M;
  CHECK(std::abs(s - c.l2_error()) <= 1e-3 * c.l2_error());
}

TEST_CASE("exact mass for random parameters") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> uq(2.0, 60.0), ue(1.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    double Q = uq(gen);
    double delta = std::pow(Q, -ue(gen));
    auto c = build_cover(bump, Q, delta);
    CHECK(std::abs(c.mass() - 1.0) < 1e-12);
  }
}

TEST_CASE("L2 bound and decay in Q") {
  double previous = INFINITY;
  for (double Q : {25.0, 50.0, 100.0, 200.0}) {
    auto c = build_cover(bump, Q, std::pow(Q, -1.5));
    CHECK(c.l2_error() <= 10.0 * Q * Q / (c.delta() * c.Lambda() * c.Lambda()));
    CHECK(l2_bound_ratio(c) <= 10.0);
    CHECK(c.l2_error() < previous);
    previous = c.l2_error();
  }
}

TEST_CASE("additive detection") {
  auto c = build_cover(bump, 60.0, std::pow(60.0, -1.5));
  Sequence zero;
  zero.start = 40;
  zero.values.assign(20, 0.0);
  CHECK(detect_additive(c, zero, zero, 50) == std::complex<double>(0.0));
  Sequence one;
  one.start = 50;
  one.values = {1.0};
  auto v = detect_additive(c, one, one, 50);
  CHECK(exact_additive(one, one, 50) == std::complex<double>(1.0));
  // F G = e(2n alpha) has unit L2 norm, so the error is at most ||1 - Itilde||_2.
  CHECK(std::abs(v - 1.0) <= std::sqrt(c.l2_error()) + 1e-9);
}

TEST_CASE("additive detection of random sign sequences") {
  std::mt19937_64 gen(2024);
  auto f = random_signs(gen, 1, 100);
  auto g = random_signs(gen, 1, 100);
  auto exact = exact_additive(f, g, 50);
  auto error_at = [&](double Q) {
    auto c = build_cover(bump, Q, std::pow(Q, -1.5));
    return std::abs(detect_additive(c, f, g, 50) - exact);
  };
  double e100 = error_at(100.0), e200 = error_at(200.0), e400 = error_at(400.0);
  CHECK(e200 / std::abs(exact) < 0.05);
  CHECK(e400 <= 0.5 * e100);
}
