#include "fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>
#include <stdexcept>

namespace opfactor::detail {

namespace {
// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
struct BufferDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
}  // namespace

void fft_inplace(std::span<std::complex<double>> data, bool forward) {
  const int n = static_cast<int>(data.size());
  if (n == 0) return;
  std::unique_ptr<fftw_complex, BufferDeleter> buf(fftw_alloc_complex(data.size()));
  if (!buf) throw std::bad_alloc();

  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(n, buf.get(), buf.get(), forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE));
  }
  if (!plan) throw std::runtime_error("fftw plan creation failed");

  auto* raw = reinterpret_cast<std::complex<double>*>(buf.get());
  std::copy(data.begin(), data.end(), raw);
  fftw_execute(plan.get());
  std::copy(raw, raw + n, data.begin());
}

}  // namespace opfactor::detail
