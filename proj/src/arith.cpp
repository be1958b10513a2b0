#include "ccl/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ccl/errors.hpp"
#include "ccl/parallel.hpp"

namespace ccl {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Operands in [0, m).
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  if (m <= (std::int64_t{1} << 31)) return a * b % m;
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t add_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  std::int64_t r = a + b;
  return r >= m ? r - m : r;
}

}  // namespace

Modulus::Modulus(std::int64_t value) : c(value) {
  require(value >= 1, "Modulus: value must be positive");
  std::int64_t rest = value;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (rest > 1) factors.emplace_back(rest, 1);
}

std::int64_t euler_phi(std::int64_t c) {
  Modulus m(c);
  std::int64_t phi = c;
  for (auto [p, e] : m.factors) phi = phi / p * (p - 1);
  return phi;
}

int moebius(std::int64_t d) {
  Modulus m(d);
  for (auto [p, e] : m.factors)
    if (e > 1) return 0;
  return m.factors.size() % 2 == 0 ? 1 : -1;
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(std::gcd(a, b), c);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t c) {
  require(c >= 1, "mod_inverse: modulus must be positive");
  if (c == 1) return 0;
  std::int64_t r0 = c, r1 = floor_mod(a, c);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  require(r0 == 1, "mod_inverse: " + std::to_string(a) + " is not invertible mod " + std::to_string(c));
  return floor_mod(t0, c);
}

std::int64_t ramanujan_sum(std::int64_t d, std::int64_t n) {
  require(d >= 1, "ramanujan_sum: d must be positive");
  std::int64_t g = std::gcd(d, n < 0 ? -n : n);
  if (g == 0) g = d;
  std::int64_t total = 0;
  for (std::int64_t e = 1; e <= g; ++e)
    if (g % e == 0) total += e * moebius(d / e);
  return total;
}

std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
  require(den >= 1, "unit_root: denominator must be positive");
  std::int64_t r = floor_mod(num, den);
  if (2 * r > den) r -= den;  // r in (-den/2, den/2]
  double angle = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(den));
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Fraction> reduced_fractions(std::int64_t c) {
  require(c >= 1, "reduced_fractions: c must be positive");
  std::vector<Fraction> out;
  for (std::int64_t d = 1; d <= c; ++d)
    if (std::gcd(d, c) == 1) out.push_back({d, c});
  return out;
}

KloostermanTable::KloostermanTable(std::int64_t c) : c_(c) {
  require(c >= 1, "kloosterman: modulus must be positive");
  for (std::int64_t d = 0; d < c; ++d)
    if (std::gcd(d, c) == 1) units_.push_back(d);
  if (c == 1) units_ = {0};
  // Batch inversion: one extended Euclid for the product of all units.
  std::size_t n = units_.size();
  inverses_.assign(n, 0);
  if (c > 1) {
    std::vector<std::int64_t> prefix(n);
    std::int64_t acc = 1;
    for (std::size_t i = 0; i < n; ++i) {
      acc = mul_mod(acc, units_[i], c);
      prefix[i] = acc;
    }
    std::int64_t inv = mod_inverse(prefix[n - 1], c);
    for (std::size_t i = n; i-- > 0;) {
      std::int64_t before = i == 0 ? 1 : prefix[i - 1];
      inverses_[i] = mul_mod(inv, before, c);
      inv = mul_mod(inv, units_[i], c);
    }
  }
  cos_.resize(static_cast<std::size_t>(c));
  sin_.resize(static_cast<std::size_t>(c));
  for (std::int64_t r = 0; r < c; ++r) {
    auto z = unit_root(r, c);
    cos_[static_cast<std::size_t>(r)] = z.real();
    sin_[static_cast<std::size_t>(r)] = z.imag();
  }
}

std::complex<double> KloostermanTable::complex_value(std::int64_t a, std::int64_t b) const {
  std::int64_t am = floor_mod(a, c_), bm = floor_mod(b, c_);
  CompensatedSum re, im;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    auto r = static_cast<std::size_t>(
        add_mod(mul_mod(am, units_[i], c_), mul_mod(bm, inverses_[i], c_), c_));
    re.add(cos_[r]);
    im.add(sin_[r]);
  }
  return {re.value(), im.value()};
}

KloostermanBatch::KloostermanBatch(const KloostermanTable& table, std::span<const std::int64_t> args)
    : table_(table) {
  std::int64_t c = table.modulus();
  require(c < (std::int64_t{1} << 30), "KloostermanBatch: modulus too large");
  const auto& u = table.units();
  const auto& v = table.inverses();
  for (auto a : args) {
    std::int64_t am = floor_mod(a, c);
    std::vector<std::int32_t> l(u.size()), r(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
      l[k] = static_cast<std::int32_t>(am * u[k] % c);
      r[k] = static_cast<std::int32_t>(am * v[k] % c);
    }
    left_.push_back(std::move(l));
    right_.push_back(std::move(r));
  }
}

double KloostermanBatch::value(std::size_t i, std::size_t j) const {
  const auto& l = left_.at(i);
  const auto& r = right_.at(j);
  const double* cosines = table_.cosines().data();
  auto c = static_cast<std::int32_t>(table_.modulus());
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t n = l.size(), k = 0;
  auto idx = [&](std::size_t t) {
    std::int32_t s = l[t] + r[t];
    return s >= c ? s - c : s;
  };
  for (; k + 4 <= n; k += 4)
    for (std::size_t q = 0; q < 4; ++q) acc[q] += cosines[idx(k + q)];
  for (; k < n; ++k) acc[0] += cosines[idx(k)];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double KloostermanTable::value(std::int64_t a, std::int64_t b) const {
  // Real by the symmetry d -> -d of the unit group.
  std::int64_t am = floor_mod(a, c_), bm = floor_mod(b, c_);
  CompensatedSum re;
  for (std::size_t i = 0; i < units_.size(); ++i)
    re.add(cos_[static_cast<std::size_t>(add_mod(mul_mod(am, units_[i], c_), mul_mod(bm, inverses_[i], c_), c_))]);
  return re.value();
}

double kloosterman(std::int64_t a, std::int64_t b, std::int64_t c) {
  require(c >= 1, "kloosterman: modulus must be positive");
  // The sum is fixed by d -> -d combined with conjugation, so it is real.
  std::complex<double> s = KloostermanTable(c).complex_value(a, b);
  if (std::abs(s.imag()) > 1e-9) throw std::logic_error("kloosterman: imaginary residue " + std::to_string(s.imag()));
  return s.real();
}

std::int64_t divisor_count(std::int64_t n) {
  Modulus m(n);
  std::int64_t t = 1;
  for (auto [p, e] : m.factors) t *= e + 1;
  return t;
}

double weil_bound(std::int64_t a, std::int64_t b, std::int64_t c) {
  std::int64_t g = gcd3(a < 0 ? -a : a, b < 0 ? -b : b, c);
  return static_cast<double>(divisor_count(c)) * std::sqrt(static_cast<double>(g)) *
         std::sqrt(static_cast<double>(c));
}

}  // namespace ccl
