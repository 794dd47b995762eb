#pragma once

#include <cstddef>
#include <vector>

#include "circfn/circulant.hpp"

namespace circfn {

/// Roots of unity for one order d: omega = exp(2 pi i / d) and the table of
/// conj(omega)^k, k < d. Built once, read-only afterwards.
class FourierContext {
 public:
  explicit FourierContext(std::size_t d);

  std::size_t order() const noexcept { return d_; }
  Complex omega() const noexcept { return std::conj(conj_pows_[1 % d_]); }
  /// conj(omega)^k for any k >= 0.
  Complex conj_omega_pow(std::size_t k) const noexcept { return conj_pows_[k % d_]; }
  Complex omega_pow(std::size_t k) const noexcept { return std::conj(conj_pows_[k % d_]); }

 private:
  std::size_t d_;
  std::vector<Complex> conj_pows_;
};

/// Eigenvalues u_1..u_d of a circulant, stored 0-based. values[i] belongs to
/// channel i + 1.
struct Spectrum {
  std::vector<Complex> values;

  std::size_t order() const noexcept { return values.size(); }
  const Complex& operator[](std::size_t i) const { return values[i]; }
  Complex& operator[](std::size_t i) { return values[i]; }
};

/// u_i = sum_j x_j conj(omega)^{ij}: the diagonal of S X S^{-1}. Exact DFT
/// below fft_threshold, FFT at or above it.
Spectrum spectrum(const Circulant& x, std::size_t fft_threshold = kDefaultFftThreshold);

/// Inverse of spectrum(): x_j = d^{-1} sum_i u_i omega^{ij}.
Circulant from_spectrum(const Spectrum& u, std::size_t fft_threshold = kDefaultFftThreshold);

/// Default relative rank threshold of pseudoinverse(): 1e-12 * d.
double default_pinv_tol(std::size_t d);

/// Indices (0-based) of channels whose |u_i| <= rel_tol * max_j |u_j|.
std::vector<std::size_t> null_channels(const Spectrum& u, double rel_tol);

/// Moore-Penrose pseudoinverse. Channels above the relative threshold are
/// inverted, the rest are set to zero. rel_tol < 0 selects default_pinv_tol.
Circulant pseudoinverse(const Circulant& x, double rel_tol = -1.0,
                        std::size_t fft_threshold = kDefaultFftThreshold);

/// True when every channel clears the pseudoinverse threshold.
bool is_invertible(const Circulant& x, double rel_tol = -1.0);

/// S with S_{ij} = omega^{ij} (0-based).
DenseMatrix fourier_matrix(std::size_t d);

/// S^{-1} with entries conj(S_{ij}) / d.
DenseMatrix inverse_fourier_matrix(std::size_t d);

}  // namespace circfn
