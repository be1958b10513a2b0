#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace ccl::detail {

void fft(std::vector<std::complex<double>>& data, int sign) {
  // The planner is not reentrant; execution of a finished plan is.
  static std::mutex planner;
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner);
  fftw_destroy_plan(plan);
}

}  // namespace ccl::detail
