#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace circfn {

/// Complex FFT of arbitrary length.
///
/// Powers of two run an iterative radix-2 kernel; every other length goes
/// through Bluestein's chirp-z reformulation on a padded power-of-two
/// convolution. Plans are immutable after construction.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const noexcept { return n_; }

  /// data[k] <- sum_j data[j] exp(-2 pi i jk / n).
  void forward(std::span<std::complex<double>> data) const;
  /// data[k] <- sum_j data[j] exp(+2 pi i jk / n). Not normalized.
  void backward(std::span<std::complex<double>> data) const;

 private:
  void radix2(std::span<std::complex<double>> data) const;
  void bluestein(std::span<std::complex<double>> data) const;

  std::size_t n_;
  bool pow2_;
  std::vector<std::complex<double>> twiddles_;  // radix-2: exp(-2 pi i k / n), k < n/2
  std::vector<std::size_t> bitrev_;
  // Bluestein state
  std::vector<std::complex<double>> chirp_;        // exp(i pi k^2 / n), k < n
  std::vector<std::complex<double>> chirp_hat_;    // FFT of the wrapped chirp filter
  std::unique_ptr<FftPlan> inner_;
};

/// Shared plan for length n. Plans are built once under a lock and never mutated.
const FftPlan& fft_plan(std::size_t n);

}  // namespace circfn
