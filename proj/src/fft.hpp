#pragma once

#include <complex>
#include <vector>

namespace ccl::detail {

// In place, unnormalized: data[k] <- sum_j data[j] e(sign jk/n), sign = +1 or -1.
void fft(std::vector<std::complex<double>>& data, int sign);

}  // namespace ccl::detail
