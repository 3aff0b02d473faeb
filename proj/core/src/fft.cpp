#include "fft.hpp"

#include <new>

namespace nlslab::detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

FftPlan::FftPlan(std::size_t n0, std::size_t n1) : size_(n0 * n1) {
  std::lock_guard lock(fftw_planner_mutex());
  buffer_ = fftw_alloc_complex(size_);
  if (buffer_ == nullptr) throw std::bad_alloc();
  const int a = static_cast<int>(n0);
  const int b = static_cast<int>(n1);
  if (n1 == 1) {
    forward_ = fftw_plan_dft_1d(a, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(a, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    forward_ = fftw_plan_dft_2d(a, b, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_2d(a, b, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
}

FftPlan::~FftPlan() {
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(backward_);
  fftw_free(buffer_);
}

void FftPlan::backward() noexcept {
  fftw_execute(backward_);
  const double scale = 1.0 / static_cast<double>(size_);
  auto* d = data();
  for (std::size_t i = 0; i < size_; ++i) d[i] *= scale;
}

}  // namespace nlslab::detail
