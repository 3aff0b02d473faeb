#pragma once

#include <complex>
#include <cstddef>
#include <mutex>

#include <fftw3.h>

namespace nlslab::detail {

/// FFTW's planner is not re-entrant; every plan creation and destruction
/// goes through this lock. Execution of distinct plans is thread-safe.
std::mutex& fftw_planner_mutex();

/// In-place complex DFT over a buffer it owns. rank 1 (n0) or rank 2
/// (n0 slow, n1 fast). Forward is unnormalized, backward divides by the size.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n0, std::size_t n1 = 1);
  ~FftPlan();

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::complex<double>* data() noexcept { return reinterpret_cast<std::complex<double>*>(buffer_); }
  std::size_t size() const noexcept { return size_; }

  void forward() noexcept { fftw_execute(forward_); }
  void backward() noexcept;

 private:
  std::size_t size_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace nlslab::detail
