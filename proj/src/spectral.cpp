#include "ccl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ccl/arith.hpp"
#include "ccl/bessel.hpp"
#include "ccl/errors.hpp"
#include "ccl/parallel.hpp"

namespace ccl {

namespace {

constexpr double kPi = std::numbers::pi;

double i_minus_k(int k) { return (k / 2) % 2 == 0 ? 1.0 : -1.0; }

void check_weight(int k) { require(k >= 2 && k % 2 == 0, "petersson: weight must be even"); }

}  // namespace

double petersson_tail_bound(int k, std::int64_t m, std::int64_t n, std::int64_t C) {
  check_weight(k);
  require(k >= 3, "petersson_tail_bound: needs k >= 3");
  double g = static_cast<double>(std::gcd(m, n));
  double log_bound = std::log(2.0 * kPi * 2.0 * std::sqrt(g)) +
                     (k - 1) * std::log(2.0 * kPi * std::sqrt(static_cast<double>(m) * static_cast<double>(n))) -
                     std::lgamma(static_cast<double>(k)) - (k - 2) * std::log(static_cast<double>(C)) -
                     std::log(static_cast<double>(k - 2));
  return std::exp(log_bound);
}

PeterssonTable::PeterssonTable(std::vector<int> weights, std::vector<std::int64_t> indices, std::int64_t c_max)
    : weights_(std::move(weights)), indices_(std::move(indices)), c_max_(c_max) {
  require(c_max_ >= 1, "petersson: c_max must be positive");
  for (int k : weights_) check_weight(k);
  for (auto m : indices_) require(m >= 1, "petersson: indices must be positive");
  const std::size_t nw = weights_.size(), ni = indices_.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t j = i; j < ni; ++j) pairs.emplace_back(i, j);
  const std::size_t slots = pairs.size() * nw;
  std::vector<BesselKernel> bessel;
  std::vector<double> log_gamma;
  for (int k : weights_) {
    bessel.emplace_back(k - 1);
    log_gamma.push_back(std::lgamma(static_cast<double>(k)));
  }

  // Moduli are processed in fixed blocks; within and across blocks the sum runs in c order.
  constexpr std::int64_t block = 64;
  std::vector<CompensatedSum> totals(slots);
  std::vector<double> partial;
  for (std::int64_t c0 = 1; c0 <= c_max_; c0 += block) {
    std::int64_t c1 = std::min(c_max_ + 1, c0 + block);
    auto count = static_cast<std::size_t>(c1 - c0);
    partial.assign(count * slots, 0.0);
    parallel_for(count, [&](std::size_t ci) {
      std::int64_t c = c0 + static_cast<std::int64_t>(ci);
      KloostermanTable table(c);
      double* out = partial.data() + ci * slots;
      KloostermanBatch batch(table, indices_);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::int64_t m = indices_[pairs[p].first], n = indices_[pairs[p].second];
        double s = batch.value(pairs[p].first, pairs[p].second);
        if (s == 0.0) continue;
        double x = 4.0 * kPi * std::sqrt(static_cast<double>(m) * static_cast<double>(n)) / static_cast<double>(c);
        // |J_nu(x)| <= (x/2)^nu / Gamma(nu + 1); terms below e^-80 are dropped.
        double log_half = std::log(0.5 * x);
        for (std::size_t w = 0; w < nw; ++w) {
          if ((weights_[w] - 1) * log_half - log_gamma[w] < -80.0) continue;
          out[p * nw + w] = s / static_cast<double>(c) * bessel[w](x);
        }
      }
    });
    for (std::size_t ci = 0; ci < count; ++ci)
      for (std::size_t s = 0; s < slots; ++s) totals[s].add(partial[ci * slots + s]);
  }

  values_.assign(nw * ni * ni, 0.0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    for (std::size_t w = 0; w < nw; ++w) {
      double delta = indices_[i] == indices_[j] ? 1.0 : 0.0;
      double v = delta + 2.0 * kPi * i_minus_k(weights_[w]) * totals[p * nw + w].value();
      values_[(w * ni + i) * ni + j] = v;
      values_[(w * ni + j) * ni + i] = v;
    }
  }
}

double PeterssonTable::value(std::size_t w, std::size_t i, std::size_t j) const {
  const std::size_t ni = indices_.size();
  if (w >= weights_.size() || i >= ni || j >= ni) throw std::out_of_range("PeterssonTable::value");
  return values_[(w * ni + i) * ni + j];
}

double PeterssonTable::tail_bound(std::size_t w, std::size_t i, std::size_t j) const {
  return petersson_tail_bound(weights_.at(w), indices_.at(i), indices_.at(j), c_max_);
}

PeterssonValue petersson_geometric(int k, std::int64_t m, std::int64_t n, std::int64_t c_max) {
  require(k >= 12, "petersson_geometric: k must be at least 12");
  require(m >= 1 && n >= 1, "petersson_geometric: m, n must be positive");
  PeterssonTable table({k}, m == n ? std::vector<std::int64_t>{m} : std::vector<std::int64_t>{m, n}, c_max);
  PeterssonValue out;
  out.k = k;
  out.m = m;
  out.n = n;
  out.c_max = c_max;
  out.value = table.value(0, 0, m == n ? 0 : 1);
  out.tail_bound = petersson_tail_bound(k, m, n, c_max);
  return out;
}

RatioResiduals petersson_ratio_check(int k, std::int64_t m, std::int64_t n, std::span<const double> lambda,
                                     std::int64_t c_max) {
  require(k == 12 || k == 16, "petersson_ratio_check: k must be 12 or 16");
  require(static_cast<std::size_t>(std::max(m, n)) < lambda.size(), "petersson_ratio_check: lambda table too short");
  std::vector<std::int64_t> idx{1};
  if (m != 1) idx.push_back(m);
  if (n != 1 && n != m) idx.push_back(n);
  PeterssonTable table({k}, idx, c_max);
  auto pos = [&](std::int64_t v) { return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), v) - idx.begin()); };
  double p11 = table.value(0, 0, 0);
  if (std::abs(p11) < 1e-12) throw std::logic_error("petersson_ratio_check: P(1,1) vanishes");
  double pmn = table.value(0, pos(m), pos(n));
  double pm1 = table.value(0, pos(m), 0);
  double pn1 = table.value(0, pos(n), 0);
  RatioResiduals r;
  r.r1 = std::abs(pmn * p11 - pm1 * pn1);
  r.r2 = std::abs(pmn / p11 - lambda[static_cast<std::size_t>(m)] * lambda[static_cast<std::size_t>(n)]);
  return r;
}

std::vector<int> sieve_weights(int k_max) {
  std::vector<int> out;
  for (int k : {12, 16, 18, 20, 22, 26})
    if (k <= k_max) out.push_back(k);
  return out;
}

double sieve_normalization(int k) { return (k - 1) / (4.0 * kPi); }

LargeSieveResult large_sieve_ratio(int k_max, std::int64_t M, std::span<const std::complex<double>> a,
                                   std::int64_t c_max) {
  require(M >= 1, "large_sieve_ratio: M must be positive");
  require(k_max <= 26, "large_sieve_ratio: k_max must not exceed 26");
  require(a.size() == static_cast<std::size_t>(M + 1), "large_sieve_ratio: a must cover [M, 2M]");
  LargeSieveResult out;
  out.weights = sieve_weights(k_max);
  for (auto v : a) out.norm2 += std::norm(v);
  if (out.weights.empty() || out.norm2 == 0.0) {
    out.c_max = c_max;
    return out;
  }
  if (c_max == 0) {
    c_max = 1000;
    while (petersson_tail_bound(12, 2 * M, 2 * M, c_max) > 1e-9) c_max += c_max / 4;
  }
  out.c_max = c_max;
  for (int k : out.weights) out.tail_bound = std::max(out.tail_bound, petersson_tail_bound(k, 2 * M, 2 * M, c_max));
  std::vector<std::int64_t> idx;
  for (std::int64_t m = M; m <= 2 * M; ++m) idx.push_back(m);
  PeterssonTable table(out.weights, idx, c_max);
  CompensatedSum lhs;
  for (std::size_t w = 0; w < out.weights.size(); ++w) {
    double norm = sieve_normalization(out.weights[w]);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        lhs.add(norm * (a[i] * std::conj(a[j])).real() * table.value(w, i, j));
  }
  out.lhs = lhs.value();
  out.ratio = out.lhs / ((static_cast<double>(k_max) * k_max + static_cast<double>(M)) * out.norm2);
  return out;
}

}  // namespace ccl
