#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "ccl/coeffs.hpp"
#include "ccl/correlations.hpp"
#include "ccl/errors.hpp"
#include "ccl/windows.hpp"
#include "doctest.h"

using namespace ccl;

namespace {

double bump(double x) { return x <= 1.0 || x >= 2.0 ? 0.0 : std::exp(-1.0 / ((x - 1.0) * (2.0 - x))); }

// n descending on the outside, h descending inside: the reverse of the library's order.
double pair_oracle(const std::vector<double>& a, const std::vector<double>& l1, const std::vector<double>& l2, double X,
                   double H) {
  long double s = 0.0L;
  for (auto n = static_cast<long>(std::floor(2.0 * X)); n >= static_cast<long>(std::ceil(X)); --n)
    for (auto h = static_cast<long>(std::floor(2.0 * H)); h >= static_cast<long>(std::ceil(H)); --h)
      s += static_cast<long double>(bump(h / H)) * a[n] * l1[n + h] * l2[n - h];
  return static_cast<double>(s);
}

double triple_oracle(const std::vector<double>& l1, const std::vector<double>& l2, const std::vector<double>& l3,
                     double X, double H) {
  long double s = 0.0L;
  for (auto n = static_cast<long>(std::floor(2.0 * X)); n >= static_cast<long>(std::ceil(X)); --n)
    for (auto h = static_cast<long>(std::floor(2.0 * H)); h >= static_cast<long>(std::ceil(H)); --h)
      s += static_cast<long double>(bump(h / H)) * l1[n - h] * l2[n] * l3[n + h];
  return static_cast<double>(s);
}

CoefficientSource constant_source(double value) {
  return [value](int, std::size_t upto) {
    std::vector<double> v(upto + 1, value);
    v[0] = 0.0;
    return v;
  };
}

}  // namespace

TEST_CASE("configuration contracts") {
  ExperimentConfig cfg;
  cfg.X = 100.0;
  cfg.H = 40.0;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg.H = 0.4;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  CHECK_THROWS_AS(shifted_pair_correlation(cfg), ContractError);
  cfg.H = 10.0;
  cfg.weights = {12, 14, 12};
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg.weights = {12, 12, 12};
  cfg.validate();
  CHECK(cfg.resolved_H_prime() == doctest::Approx(100.0 / 3.0));
  CHECK(parse_test_sequence("rademacher") == TestSequence::Rademacher);
  CHECK_THROWS_AS(parse_test_sequence("gaussian"), ContractError);
  CHECK(to_string(TestSequence::Lambda3) == "lambda3");
}

TEST_CASE("shift weights live on [H, 2H]") {
  for (double H : {3.0, 6.5, 17.0, 100.0}) {
    auto s = ShiftWeights::from_window(SmoothWindow::bump(), H);
    CHECK(static_cast<double>(s.h0) >= H);
    CHECK(static_cast<double>(s.h0 + static_cast<std::int64_t>(s.w.size()) - 1) <= 2.0 * H);
    for (std::size_t i = 0; i < s.w.size(); ++i)
      CHECK(s.w[i] == bump(static_cast<double>(s.h0 + static_cast<std::int64_t>(i)) / H));
  }
  CHECK(ShiftWeights::from_window(SmoothWindow::bump(), 0.4).all_zero());
}

TEST_CASE("pair correlation against reordered loops") {
  ExperimentConfig cfg;
  cfg.X = 20.0;
  cfg.H = 6.0;
  auto r = shifted_pair_correlation(cfg);
  auto l = eigenvalue_table(12, 100);
  std::vector<double> ones(101, 1.0);
  double want = pair_oracle(ones, l, l, 20.0, 6.0);
  CHECK(std::abs(r.value - want) <= 1e-10 * std::abs(want));
  CHECK(r.a_norm == doctest::Approx(std::sqrt(21.0)));

  cfg.X = 300.0;
  cfg.H = 40.0;
  cfg.a = TestSequence::Rademacher;
  cfg.seed = 12;
  cfg.weights = {12, 16, 12};
  r = shifted_pair_correlation(cfg);
  auto a = test_sequence(TestSequence::Rademacher, 12, 800, eigenform_source(), 12);
  want = pair_oracle(a, eigenvalue_table(12, 800), eigenvalue_table(16, 800), 300.0, 40.0);
  CHECK(std::abs(r.value - want) <= 1e-10 * std::abs(want));
}

TEST_CASE("zero test sequence gives zero") {
  std::vector<double> zero(200, 0.0);
  auto l = eigenvalue_table(12, 199);
  auto s = ShiftWeights::from_window(SmoothWindow::bump(), 10.0);
  CHECK(pair_sum(zero, l, l, 50.0, s) == 0.0);
  CHECK(triple_sum(l, zero, l, 50.0, s) == 0.0);
}

TEST_CASE("triple correlation") {
  ExperimentConfig cfg;
  cfg.X = 100.0;
  cfg.H = 20.0;
  auto r = triple_correlation(cfg);
  auto l = eigenvalue_table(12, 300);
  double want = triple_oracle(l, l, l, 100.0, 20.0);
  CHECK(std::abs(r.value - want) <= 1e-10 * std::abs(want));

  auto l16 = eigenvalue_table(16, 300);
  auto s = ShiftWeights::from_window(SmoothWindow::bump(), 20.0);
  double forward = triple_sum(l, l, l16, 100.0, s);
  double reflected = triple_sum(l16, l, l, 100.0, s.reflected());
  CHECK(std::abs(forward - reflected) <= 1e-12 * std::abs(forward));
  CHECK(std::abs(forward - triple_oracle(l, l, l16, 100.0, 20.0)) <= 1e-10 * std::abs(forward));
}

TEST_CASE("Euler's constant") {
  CHECK(std::string(kEulerGammaDigits).size() == 52);
  CHECK(std::stod(kEulerGammaDigits) == boost::math::constants::euler<double>());
  CHECK(std::string(kEulerGammaDigits).substr(0, 20) == "0.577215664901532860");
}

TEST_CASE("divisor main sum with one term") {
  std::vector<double> a(2001, 1.0);
  double gamma = boost::math::constants::euler<double>();
  long double want = 0.0L;
  for (int n = 1000; n <= 2000; ++n) {
    double t = std::log(static_cast<double>(n)) + 2.0 * gamma;
    want += t * t;
  }
  CHECK(divisor_main_sum(a, 1000.0, 1) == doctest::Approx(static_cast<double>(want)).epsilon(1e-13));
}

TEST_CASE("divisor main term onset") {
  auto at = [](double X) {
    ExperimentConfig cfg;
    cfg.X = X;
    cfg.H = std::sqrt(X);
    return divisor_main_term(cfg, 1000);
  };
  auto small = at(1e4), large = at(1e5);
  CHECK(small.last_block_share < 0.01);
  CHECK(large.relative_deviation < small.relative_deviation);
  ExperimentConfig cfg;
  cfg.X = 1e4;
  cfg.H = 100.0;
  CHECK_THROWS_AS(divisor_main_term(cfg, 1), ContractError);
  CHECK_THROWS_AS(divisor_main_term(cfg, 3), ContractError);
}

TEST_CASE("Wilton sums") {
  auto l = eigenvalue_table(12, 1 << 14);
  auto one = wilton_sup(l, 1);
  CHECK(one.sup == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t x : {std::size_t{100}, std::size_t{1000}}) {
    double direct = 0.0;
    for (std::size_t n = 1; n <= x; ++n) direct += l[n];
    CHECK(wilton_sup(l, x).dc == doctest::Approx(direct).epsilon(1e-12));
  }
  auto w = wilton_sup(l, 1 << 14);
  CHECK(w.grid == (1u << 16));
  auto direct = twisted_partial_sum(l, 1 << 14, w.alpha);
  CHECK(std::abs(std::abs(direct) - w.sup) <= 1e-8 * w.sup);
  CHECK_THROWS_AS(wilton_sup(l, 100, 2), ContractError);
}

TEST_CASE("gamma-star norm") {
  auto l = eigenvalue_table(12, 400);
  std::vector<double> zero(400, 0.0);
  GammaStarConfig cfg;
  CHECK(gamma_star_norm(cfg, zero, l).norm2 == 0.0);
  auto g = gamma_star_norm(cfg, l, l);
  CHECK(g.ratio > 0.0);
  CHECK(g.ratio <= 1.0);
  cfg.apply_window = false;
  auto p = gamma_star_norm(cfg, l, l);
  CHECK(std::abs(p.norm2 - p.parseval) <= 1e-8 * p.norm2);
  cfg.M1 = 40;
  cfg.M2 = 90;
  cfg.sign2 = -1;
  cfg.u1 = 0.3;
  cfg.u3 = -1.1;
  p = gamma_star_norm(cfg, l, l);
  CHECK(std::abs(p.norm2 - p.parseval) <= 1e-8 * p.norm2);
}

TEST_CASE("pipeline fidelity") {
  auto l = eigenvalue_table(12, 700);
  PipelineConfig cfg;
  auto r300 = pipeline_fidelity(cfg, l, l);
  CHECK(r300.relative_error < 0.05);
  cfg.Q = 600.0;
  auto r600 = pipeline_fidelity(cfg, l, l);
  CHECK(r600.abs_error < r300.abs_error);

  PipelineConfig tiny;
  tiny.H = 0.4;
  auto z = pipeline_fidelity(tiny, l, l);
  CHECK(z.E_direct == 0.0);
  CHECK(z.E_reconstructed == 0.0);

  PipelineConfig bad;
  bad.Q = 5.0;
  CHECK_THROWS_AS(pipeline_fidelity(bad, l, l), ContractError);
}

TEST_CASE("pipeline error is monotone in Q") {
  auto l = eigenvalue_table(12, 700);
  PipelineConfig cfg;
  cfg.n = 504;
  std::vector<double> err;
  for (double Q : {100.0, 200.0, 400.0}) {
    cfg.Q = Q;
    err.push_back(pipeline_fidelity(cfg, l, l).abs_error);
  }
  CHECK(err[1] <= 1.1 * err[0]);
  CHECK(err[2] <= 1.1 * err[1]);
}

TEST_CASE("scaling study") {
  std::vector<double> X{4096.0, 8192.0, 16384.0, 32768.0, 65536.0};
  auto zero = scaling_study(X, 0.75, ScalingKind::Pair, {}, constant_source(0.0));
  CHECK(zero.degenerate);
  auto ones = scaling_study(X, 0.75, ScalingKind::Pair, {}, constant_source(1.0));
  CHECK(!ones.degenerate);
  CHECK(std::abs(ones.fit.slope - 1.75) < 0.05);
  for (std::size_t i = 0; i < X.size(); ++i) {
    double H = ones.H[i];
    double closed = H * 0.0070298584066096562 * X[i];
    CHECK(std::abs(ones.value[i] - closed) <= 0.01 * closed);
  }
  auto real = scaling_study(X, 0.75, ScalingKind::Pair);
  CHECK(real.fit.slope <= real.bound_fit.slope + 0.15);
  auto triple = scaling_study(X, 0.75, ScalingKind::Triple);
  CHECK(triple.fit.slope <= triple.bound_fit.slope + 0.15);
  CHECK_THROWS_AS(scaling_study(std::vector<double>{1e3, 2e3, 4e3}, 0.75, ScalingKind::Pair), ContractError);
}

TEST_CASE("bound ratio over random sign vectors") {
  ExperimentConfig cfg;
  cfg.X = 1e4;
  cfg.H = std::round(std::pow(1e4, 0.75));
  cfg.a = TestSequence::Rademacher;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.seed = seed;
    CHECK(shifted_pair_correlation(cfg).bound_ratio <= 10.0);
  }
}
