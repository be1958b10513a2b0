#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace ccl {

// Truncated power series in q with exact integer coefficients, indexed from q^0.
// A series of size n is known modulo q^n; every operation respects that truncation.
class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(std::vector<mpz_class> coefficients) : c_(std::move(coefficients)) {}
  QSeries(std::initializer_list<long> coefficients);

  std::size_t size() const { return c_.size(); }
  bool empty() const { return c_.empty(); }
  const mpz_class& operator[](std::size_t n) const { return c_[n]; }
  mpz_class& operator[](std::size_t n) { return c_[n]; }
  const std::vector<mpz_class>& coefficients() const { return c_; }

  QSeries truncated(std::size_t n) const;
  // Multiplies by q^k, keeping the current length.
  QSeries shifted(std::size_t k) const;
  // Largest bit length of any coefficient.
  std::size_t max_bits() const;

  friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<mpz_class> c_;
};

// Product truncated to min(a.size(), b.size()) terms (or `length` if smaller).
// Large inputs go through Kronecker substitution into a single GMP multiplication.
QSeries multiply(const QSeries& a, const QSeries& b);
QSeries multiply(const QSeries& a, const QSeries& b, std::size_t length);

// Quadratic reference product; kept public as an independent check of multiply().
QSeries multiply_schoolbook(const QSeries& a, const QSeries& b, std::size_t length);

QSeries power(const QSeries& base, unsigned exponent, std::size_t length);

}  // namespace ccl
