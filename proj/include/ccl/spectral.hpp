#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ccl {

// P_k(m, n) = delta_{mn} + 2 pi i^{-k} sum_{c <= c_max} S(m, n; c)/c J_{k-1}(4 pi sqrt(mn)/c).
struct PeterssonValue {
  int k = 12;
  std::int64_t m = 1, n = 1;
  std::int64_t c_max = 1;
  double value = 0.0;
  double tail_bound = 0.0;
};

// Bound on the omitted c > C terms, from |S(m,n;c)|/c <= 2 gcd(m,n)^{1/2} and
// |J_nu(y)| <= (y/2)^nu / Gamma(nu + 1).
double petersson_tail_bound(int k, std::int64_t m, std::int64_t n, std::int64_t C);

PeterssonValue petersson_geometric(int k, std::int64_t m, std::int64_t n, std::int64_t c_max);

// P_k(indices[i], indices[j]) for every weight and pair, sharing each modulus' Kloosterman
// table. Reduction over c is in fixed order, independent of the thread count.
class PeterssonTable {
 public:
  PeterssonTable(std::vector<int> weights, std::vector<std::int64_t> indices, std::int64_t c_max);

  const std::vector<int>& weights() const { return weights_; }
  const std::vector<std::int64_t>& indices() const { return indices_; }
  std::int64_t c_max() const { return c_max_; }
  double value(std::size_t weight_index, std::size_t i, std::size_t j) const;
  double tail_bound(std::size_t weight_index, std::size_t i, std::size_t j) const;

 private:
  std::vector<int> weights_;
  std::vector<std::int64_t> indices_;
  std::int64_t c_max_;
  std::vector<double> values_;  // [weight][i][j], symmetric in (i, j)
};

struct RatioResiduals {
  double r1 = 0.0;  // |P(m,n) P(1,1) - P(m,1) P(n,1)|
  double r2 = 0.0;  // |P(m,n)/P(1,1) - lambda(m) lambda(n)|
};

// k in {12, 16}; lambda indexed by n.
RatioResiduals petersson_ratio_check(int k, std::int64_t m, std::int64_t n, std::span<const double> lambda,
                                     std::int64_t c_max = 1000);

// Level-1 weights up to k_max whose cusp space has dimension one.
std::vector<int> sieve_weights(int k_max);

struct LargeSieveResult {
  double lhs = 0.0;    // sum_k Gamma(k) sum_f |sum_m a_m sqrt(m) rho_f(m)|^2
  double norm2 = 0.0;  // sum |a_m|^2
  double ratio = 0.0;  // lhs / ((k_max^2 + M) norm2)
  std::int64_t c_max = 0;
  double tail_bound = 0.0;
  std::vector<int> weights;
};

// a[i] is the coefficient at m = M + i, i <= M. c_max = 0 picks one with tail bound below 1e-9.
LargeSieveResult large_sieve_ratio(int k_max, std::int64_t M, std::span<const std::complex<double>> a,
                                   std::int64_t c_max = 0);

// Gamma(k) sqrt(m m') rho_f(m) conj(rho_f(m')) summed over f equals (k - 1)/(4 pi) P_k(m, m').
double sieve_normalization(int k);

}  // namespace ccl
