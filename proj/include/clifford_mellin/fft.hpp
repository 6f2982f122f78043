#pragma once

// Thin RAII wrapper over FFTW for batched, unnormalized 2D complex DFTs.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>

#include "clifford_mellin/errors.hpp"

namespace clifford_mellin {

namespace detail {
// The FFTW planner is not thread-safe; execution is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// In-place forward DFT, X(a, b) = sum x(r, c) exp(-2 pi i (a r / rows +
/// b c / cols)), over `channels` row-major arrays stored back to back.
class Fft2d {
 public:
  Fft2d(std::size_t rows, std::size_t cols, std::size_t channels)
      : rows_(rows), cols_(cols), channels_(channels) {
    const int n[2] = {static_cast<int>(rows), static_cast<int>(cols)};
    const int dist = static_cast<int>(rows * cols);
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_complex* scratch = fftw_alloc_complex(size());
    plan_ = fftw_plan_many_dft(2, n, static_cast<int>(channels), scratch,
                               nullptr, 1, dist, scratch, nullptr, 1, dist,
                               FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan_ == nullptr) throw Error("FFTW failed to create a plan");
  }

  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;
  Fft2d(Fft2d&& o) noexcept
      : rows_(o.rows_), cols_(o.cols_), channels_(o.channels_),
        plan_(std::exchange(o.plan_, nullptr)) {}
  Fft2d& operator=(Fft2d&&) = delete;

  ~Fft2d() {
    if (plan_ != nullptr) {
      std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
  }

  std::size_t size() const { return rows_ * cols_ * channels_; }

  void forward(std::span<std::complex<double>> data) const {
    if (data.size() != size()) throw DomainError("FFT buffer size mismatch");
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan_, p, p);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t channels_;
  fftw_plan plan_ = nullptr;
};

/// Non-negative residue of a (possibly negative) frequency index.
inline std::size_t wrap_index(long index, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((index % m) + m) % m);
}

}  // namespace clifford_mellin
