#include "circfn/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "circfn/error.hpp"

namespace circfn {

namespace {

using cd = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// exp(-2 pi i k / n) with the quarter turns returned exactly.
cd unit_root(std::size_t k, std::size_t n) {
  k %= n;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == n) return {0.0, -1.0};
  if (4 * k == 3 * n) return {0.0, 1.0};
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw InvalidDimension("FFT length must be positive");
  if (pow2_) {
    twiddles_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) twiddles_[k] = unit_root(k, n);
    bitrev_.resize(n);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      bitrev_[i] = r;
    }
    return;
  }

  // exp(-2 pi i jk/n) = conj(c_k) conj(c_j) c_{k-j} with c_j = exp(i pi j^2 / n).
  const std::size_t m = next_pow2(2 * n - 1);
  chirp_.resize(n);
  const std::size_t period = 2 * n;
  for (std::size_t j = 0; j < n; ++j) {
    // j^2 mod 2n keeps the angle small and exact for large j.
    const std::size_t r = static_cast<std::size_t>((static_cast<unsigned __int128>(j) * j) % period);
    const double angle = std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    chirp_[j] = {std::cos(angle), std::sin(angle)};
  }
  inner_ = std::make_unique<FftPlan>(m);
  chirp_hat_.assign(m, cd{});
  chirp_hat_[0] = chirp_[0];
  for (std::size_t j = 1; j < n; ++j) {
    chirp_hat_[j] = chirp_[j];
    chirp_hat_[m - j] = chirp_[j];
  }
  inner_->forward(chirp_hat_);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<cd> data) const {
  if (data.size() != n_) throw InvalidDimension("FFT input length does not match plan");
  if (n_ == 1) return;
  if (pow2_) {
    radix2(data);
  } else {
    bluestein(data);
  }
}

void FftPlan::backward(std::span<cd> data) const {
  for (auto& v : data) v = std::conj(v);
  forward(data);
  for (auto& v : data) v = std::conj(v);
}

void FftPlan::radix2(std::span<cd> data) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = bitrev_[i];
    if (i < r) std::swap(data[i], data[r]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cd t = twiddles_[k * stride] * data[start + k + half];
        const cd u = data[start + k];
        data[start + k] = u + t;
        data[start + k + half] = u - t;
      }
    }
  }
}

void FftPlan::bluestein(std::span<cd> data) const {
  const std::size_t m = inner_->size();
  std::vector<cd> a(m);
  for (std::size_t j = 0; j < n_; ++j) a[j] = data[j] * std::conj(chirp_[j]);
  inner_->forward(a);
  for (std::size_t k = 0; k < m; ++k) a[k] *= chirp_hat_[k];
  inner_->backward(a);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * inv * std::conj(chirp_[k]);
}

const FftPlan& fft_plan(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
  return *it->second;
}

}  // namespace circfn
