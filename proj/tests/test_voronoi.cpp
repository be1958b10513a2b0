#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ccl/coeffs.hpp"
#include "ccl/errors.hpp"
#include "ccl/voronoi.hpp"
#include "doctest.h"

using namespace ccl;

namespace {

double bump(double x) { return x <= 1.0 || x >= 2.0 ? 0.0 : std::exp(-1.0 / ((x - 1.0) * (2.0 - x))); }

struct Prepared {
  std::vector<double> lambda;
  VoronoiInstance inst;
};

Prepared prepare(int weight, std::int64_t b, std::int64_t c, double N) {
  Prepared p;
  p.inst.weight = weight;
  p.inst.b = b;
  p.inst.c = c;
  p.inst.N = N;
  p.lambda = eigenvalue_table(weight, required_coefficients(p.inst, true));
  p.inst.lambda = p.lambda;
  return p;
}

}  // namespace

TEST_CASE("zero window") {
  auto p = prepare(12, 1, 3, 50.0);
  p.inst.V = SmoothWindow::zero();
  CHECK(voronoi_lhs(p.inst) == std::complex<double>(0.0));
  CHECK(voronoi_rhs(p.inst).value == std::complex<double>(0.0));
  CHECK(voronoi_check(p.inst).relative_error == 0.0);
}

TEST_CASE("left side against reverse-order compensated summation") {
  auto p = prepare(12, 1, 1, 50.0);
  long double sum = 0.0L, comp = 0.0L;
  for (int n = 100; n >= 50; --n) {
    long double y = static_cast<long double>(p.lambda[n] * bump(n / 50.0)) - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  auto lhs = voronoi_lhs(p.inst);
  CHECK(std::abs(lhs.real() - static_cast<double>(sum)) < 1e-12);
  CHECK(std::abs(lhs.imag()) < 1e-15);
}

TEST_CASE("left side is periodic in b") {
  auto p = prepare(12, 2, 5, 50.0);
  auto q = p;
  q.inst.b = 7;
  q.inst.lambda = q.lambda;
  CHECK(std::abs(voronoi_lhs(p.inst) - voronoi_lhs(q.inst)) < 1e-13);
}

TEST_CASE("contracts") {
  auto p = prepare(12, 2, 4, 50.0);
  CHECK_THROWS_AS(voronoi_rhs(p.inst), ContractError);
  auto q = prepare(12, 1, 3, 50.0);
  std::vector<double> shortened(q.lambda.begin(), q.lambda.begin() + 60);
  q.inst.lambda = shortened;
  CHECK_THROWS_AS(voronoi_lhs(q.inst), ContractError);
}

TEST_CASE("identity at c = 1") {
  auto p = prepare(12, 1, 1, 50.0);
  auto r = voronoi_check(p.inst);
  CHECK(r.relative_error < 1e-6);
  CHECK(r.doubling_change < 1e-8);
}

TEST_CASE("identity on representative instances") {
  struct Case {
    int weight;
    std::int64_t b, c;
    double N;
  };
  for (auto k : {Case{12, 1, 2, 100.0}, Case{16, 2, 5, 200.0}, Case{12, 1, 3, 50.0}}) {
    auto p = prepare(k.weight, k.b, k.c, k.N);
    auto r = voronoi_check(p.inst);
    CHECK(r.relative_error < 1e-6);
    CHECK(r.doubling_change < 1e-8);
    CHECK(r.rhs.truncation_estimate < 1e-10);
  }
}

TEST_CASE("conjugation symmetry") {
  auto p = prepare(16, 1, 3, 50.0);
  auto q = prepare(16, -1, 3, 50.0);
  auto a = voronoi_check(p.inst, false), b = voronoi_check(q.inst, false);
  CHECK(std::abs(a.lhs - std::conj(b.lhs)) < 1e-9);
  CHECK(std::abs(a.rhs.value - std::conj(b.rhs.value)) < 1e-9);
}
