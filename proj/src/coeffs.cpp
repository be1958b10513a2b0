#include "ccl/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "ccl/errors.hpp"

namespace ccl {

namespace {

// prod_{n>=1}(1 - q^n) by Euler's pentagonal number theorem.
QSeries euler_product(std::size_t length) {
  std::vector<mpz_class> c(length);
  if (length > 0) c[0] = 1;
  for (long k = 1;; ++k) {
    long sign = (k % 2 == 1) ? -1 : 1;
    auto p1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
    auto p2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
    if (p1 >= length) break;
    c[p1] += sign;
    if (p2 < length) c[p2] += sign;
  }
  return QSeries(std::move(c));
}

std::vector<std::uint64_t> sigma_power(unsigned power, std::size_t upto) {
  std::vector<std::uint64_t> s(upto + 1, 0);
  for (std::size_t d = 1; d <= upto; ++d) {
    std::uint64_t dp = 1;
    for (unsigned i = 0; i < power; ++i) dp *= d;
    for (std::size_t m = d; m <= upto; m += d) s[m] += dp;
  }
  return s;
}

}  // namespace

QSeries eta_power_qexp(int exponent, std::size_t upto) {
  require(upto >= 1, "eta_power_qexp: empty series requested");
  require(exponent > 0 && exponent % 2 == 0, "eta_power_qexp: exponent must be a positive even integer");
  std::size_t length = upto + 1;
  QSeries product = power(euler_product(length), static_cast<unsigned>(exponent), length);
  return product.shifted(1);
}

QSeries delta_qexp_jacobi(std::size_t upto) {
  require(upto >= 1, "delta_qexp_jacobi: empty series requested");
  std::size_t length = upto + 1;
  std::vector<mpz_class> c(length);
  for (long k = 0;; ++k) {
    auto e = static_cast<std::size_t>(k * (k + 1) / 2);
    if (e >= length) break;
    c[e] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
  }
  return power(QSeries(std::move(c)), 8, length).shifted(1);
}

QSeries eisenstein_qexp(int weight, std::size_t upto) {
  require(weight == 4 || weight == 6, "eisenstein_qexp: weight must be 4 or 6, got " + std::to_string(weight));
  std::size_t length = upto + 1;
  auto sigma = sigma_power(weight == 4 ? 3 : 5, upto);
  long scale = weight == 4 ? 240 : -504;
  std::vector<mpz_class> c(length);
  c[0] = 1;
  for (std::size_t n = 1; n < length; ++n) {
    mpz_class s;
    mpz_set_ui(s.get_mpz_t(), sigma[n]);
    c[n] = s * scale;
  }
  return QSeries(std::move(c));
}

std::vector<double> normalized_eigenvalues(const QSeries& a, int weight) {
  std::vector<double> lambda(a.size(), 0.0);
  double half = (weight - 1) / 2.0;
  for (std::size_t n = 1; n < a.size(); ++n)
    lambda[n] = a[n].get_d() / std::pow(static_cast<double>(n), half);
  return lambda;
}

Eigenform make_eigenform(int weight, std::size_t upto) {
  require(weight == 12 || weight == 16, "make_eigenform: weight must be 12 or 16, got " + std::to_string(weight));
  require(upto >= 1, "make_eigenform: need at least one coefficient");
  Eigenform f;
  f.weight = weight;
  QSeries delta = eta_power_qexp(24, upto);
  f.a = weight == 12 ? delta : multiply(delta, eisenstein_qexp(4, upto));
  f.lambda = normalized_eigenvalues(f.a, weight);
  return f;
}

std::vector<double> eigenvalue_table(int weight, std::size_t upto) {
  static std::mutex mutex;
  static std::map<int, std::vector<double>> cache;
  std::lock_guard lock(mutex);
  auto& table = cache[weight];
  if (table.size() < upto + 1) {
    // Grow geometrically so repeated small extensions stay cheap.
    std::size_t target = std::max<std::size_t>(upto, table.size() + table.size() / 2);
    table = make_eigenform(weight, std::max<std::size_t>(target, 1)).lambda;
  }
  return {table.begin(), table.begin() + static_cast<std::ptrdiff_t>(upto + 1)};
}

std::vector<std::uint64_t> divisor_sieve(int k, std::size_t upto) {
  require(k >= 2, "divisor_sieve: fold must be >= 2");
  require(upto >= 1, "divisor_sieve: upto must be >= 1");
  std::vector<std::uint64_t> current(upto + 1, 1);
  current[0] = 0;
  for (int fold = 2; fold <= k; ++fold) {
    std::vector<std::uint64_t> next(upto + 1, 0);
    for (std::size_t d = 1; d <= upto; ++d)
      for (std::size_t m = d; m <= upto; m += d) next[m] += current[d];
    current = std::move(next);
  }
  return current;
}

HeckeReport hecke_relation_report(const Eigenform& form, std::size_t bound) {
  require(form.upto() >= bound * bound, "hecke_relation_report: need coefficients through bound^2");
  HeckeReport report;
  report.bound = bound;
  std::vector<mpz_class> dpow(bound + 1);
  for (std::size_t d = 1; d <= bound; ++d)
    mpz_ui_pow_ui(dpow[d].get_mpz_t(), d, static_cast<unsigned long>(form.weight - 1));
  mpz_class lhs, rhs;
  for (std::size_t m = 1; m <= bound; ++m) {
    for (std::size_t n = 1; n <= bound; ++n) {
      lhs = form.a[m] * form.a[n];
      rhs = 0;
      std::size_t g = std::gcd(m, n);
      for (std::size_t d = 1; d <= g; ++d)
        if (g % d == 0) rhs += dpow[d] * form.a[m * n / (d * d)];
      ++report.pairs_checked;
      if (lhs != rhs) {
        if (report.violations == 0) {
          report.first_m = m;
          report.first_n = n;
        }
        ++report.violations;
      }
    }
  }
  return report;
}

DeligneReport deligne_report(const Eigenform& form, std::size_t upto) {
  require(form.upto() >= upto, "deligne_report: not enough coefficients");
  auto tau = divisor_sieve(2, std::max<std::size_t>(upto, 1));
  DeligneReport r;
  r.upto = upto;
  for (std::size_t n = 1; n <= upto; ++n) {
    double ratio = std::abs(form.lambda[n]) / static_cast<double>(tau[n]);
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = n;
    }
    if (ratio > 1.0) ++r.violations;
  }
  return r;
}

}  // namespace ccl
