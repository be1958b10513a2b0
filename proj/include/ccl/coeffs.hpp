#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccl/qseries.hpp"

namespace ccl {

// Level-1 holomorphic Hecke eigenform with exact coefficients a(n), n <= upto().
// a[0] is zero; lambda[n] = a(n) n^{-(weight-1)/2}.
struct Eigenform {
  int weight = 0;
  QSeries a;
  std::vector<double> lambda;

  std::size_t upto() const { return a.empty() ? 0 : a.size() - 1; }
};

// All series below are returned through q^upto (size upto + 1).

// q * prod_{n>=1} (1 - q^n)^exponent. exponent = 24 gives the discriminant form.
QSeries eta_power_qexp(int exponent, std::size_t upto);

// Discriminant via Jacobi's identity prod(1-q^n)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2},
// raised to the eighth power. Independent of the pentagonal route used by eta_power_qexp.
QSeries delta_qexp_jacobi(std::size_t upto);

// E_4 = 1 + 240 sum sigma_3(n) q^n,  E_6 = 1 - 504 sum sigma_5(n) q^n.
QSeries eisenstein_qexp(int weight, std::size_t upto);

// weight 12 -> Delta, weight 16 -> Delta * E_4.
Eigenform make_eigenform(int weight, std::size_t upto);

// lambda[0..upto] for weight 12 or 16, memoized per weight; longer requests extend the cache.
std::vector<double> eigenvalue_table(int weight, std::size_t upto);

// Normalized eigenvalues from exact coefficients.
std::vector<double> normalized_eigenvalues(const QSeries& a, int weight);

// tau_k(n) for n <= upto (index 0 unused), by k-1 Dirichlet convolutions with 1.
std::vector<std::uint64_t> divisor_sieve(int k, std::size_t upto);

struct HeckeReport {
  std::size_t bound = 0;
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  std::size_t first_m = 0, first_n = 0;  // first violating pair, if any
};

// Checks a(m)a(n) = sum_{d|(m,n)} d^{k-1} a(mn/d^2) exactly for all m, n <= bound.
HeckeReport hecke_relation_report(const Eigenform& form, std::size_t bound);

struct DeligneReport {
  std::size_t upto = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // max |lambda(n)| / tau(n)
  std::size_t argmax = 0;
};

DeligneReport deligne_report(const Eigenform& form, std::size_t upto);

}  // namespace ccl
