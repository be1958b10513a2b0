#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ccl {

// Worker cap: CCL_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index must write only its own output slot so the
// result is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Fixed-shape pairwise reduction; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

}  // namespace ccl
