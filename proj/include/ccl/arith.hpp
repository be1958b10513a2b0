#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <span>
#include <vector>

namespace ccl {

struct Modulus {
  std::int64_t c = 1;
  std::vector<std::pair<std::int64_t, int>> factors;  // (prime, exponent), ascending

  explicit Modulus(std::int64_t value);
};

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

std::int64_t euler_phi(std::int64_t c);
int moebius(std::int64_t d);
std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c);

// Inverse of a modulo c (c >= 1); throws ContractError when gcd(a, c) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t c);

// r_d(n) = sum_{e | (d, n)} e mu(d/e).
std::int64_t ramanujan_sum(std::int64_t d, std::int64_t n);

// e(num/den) with the argument reduced exactly before conversion.
std::complex<double> unit_root(std::int64_t num, std::int64_t den);

// Residues d in [1, c] with gcd(d, c) = 1, as fractions d/c.
std::vector<Fraction> reduced_fractions(std::int64_t c);

// Reduced residues mod c, their inverses, and a table of e(r/c), shared by every
// Kloosterman sum with this modulus.
class KloostermanTable {
 public:
  explicit KloostermanTable(std::int64_t c);

  std::int64_t modulus() const { return c_; }
  const std::vector<std::int64_t>& units() const { return units_; }
  const std::vector<std::int64_t>& inverses() const { return inverses_; }

  // Full complex value of S(a, b; c).
  std::complex<double> complex_value(std::int64_t a, std::int64_t b) const;
  // S(a, b; c), which is real.
  double value(std::int64_t a, std::int64_t b) const;
  // cos(2 pi r / c) for r = 0, ..., c - 1.
  const std::vector<double>& cosines() const { return cos_; }

 private:
  std::int64_t c_;
  std::vector<std::int64_t> units_;
  std::vector<std::int64_t> inverses_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// S(args[i], args[j]; c) for all pairs on one modulus. Residues a u and b ubar are
// tabulated once per argument, so each sum is a single gather pass over the units.
class KloostermanBatch {
 public:
  KloostermanBatch(const KloostermanTable& table, std::span<const std::int64_t> args);
  double value(std::size_t i, std::size_t j) const;

 private:
  const KloostermanTable& table_;
  std::vector<std::vector<std::int32_t>> left_, right_;
};

double kloosterman(std::int64_t a, std::int64_t b, std::int64_t c);

// tau(c) gcd(a, b, c)^{1/2} c^{1/2}
double weil_bound(std::int64_t a, std::int64_t b, std::int64_t c);

std::int64_t divisor_count(std::int64_t n);

}  // namespace ccl
