#include "circfn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "circfn/error.hpp"
#include "circfn/fft.hpp"

namespace circfn {

FourierContext::FourierContext(std::size_t d) : d_(d), conj_pows_(d) {
  if (d < 2) throw InvalidDimension("Fourier context order must be at least 2, got " + std::to_string(d));
  for (std::size_t k = 0; k < d; ++k) {
    if (k == 0) {
      conj_pows_[k] = 1.0;
    } else if (2 * k == d) {
      conj_pows_[k] = -1.0;
    } else if (4 * k == d) {
      conj_pows_[k] = Complex(0.0, -1.0);
    } else if (4 * k == 3 * d) {
      conj_pows_[k] = Complex(0.0, 1.0);
    } else {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
      conj_pows_[k] = Complex(std::cos(angle), std::sin(angle));
    }
  }
}

Spectrum spectrum(const Circulant& x, std::size_t fft_threshold) {
  const std::size_t d = x.order();
  Spectrum out{std::vector<Complex>(x.row().begin(), x.row().end())};
  if (d >= fft_threshold) {
    fft_plan(d).forward(out.values);
    return out;
  }
  const FourierContext ctx(d);
  for (std::size_t i = 0; i < d; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) acc += x[j] * ctx.conj_omega_pow(i * j);
    out.values[i] = acc;
  }
  return out;
}

Circulant from_spectrum(const Spectrum& u, std::size_t fft_threshold) {
  const std::size_t d = u.order();
  if (d < 2) throw InvalidDimension("spectrum order must be at least 2, got " + std::to_string(d));
  const double inv = 1.0 / static_cast<double>(d);
  std::vector<Complex> row(u.values);
  if (d >= fft_threshold) {
    fft_plan(d).backward(row);
    for (auto& v : row) v *= inv;
    return Circulant(std::move(row));
  }
  const FourierContext ctx(d);
  for (std::size_t j = 0; j < d; ++j) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) acc += u[i] * ctx.omega_pow(i * j);
    row[j] = acc * inv;
  }
  return Circulant(std::move(row));
}

double default_pinv_tol(std::size_t d) { return 1e-12 * static_cast<double>(d); }

std::vector<std::size_t> null_channels(const Spectrum& u, double rel_tol) {
  double peak = 0.0;
  for (const auto& v : u.values) peak = std::max(peak, std::abs(v));
  const double cut = rel_tol * peak;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < u.order(); ++i)
    if (!(std::abs(u[i]) > cut)) out.push_back(i);
  return out;
}

Circulant pseudoinverse(const Circulant& x, double rel_tol, std::size_t fft_threshold) {
  if (rel_tol < 0.0) rel_tol = default_pinv_tol(x.order());
  Spectrum u = spectrum(x, fft_threshold);
  double peak = 0.0;
  for (const auto& v : u.values) peak = std::max(peak, std::abs(v));
  const double cut = rel_tol * peak;
  for (auto& v : u.values) v = std::abs(v) > cut ? 1.0 / v : Complex(0.0);
  return from_spectrum(u, fft_threshold);
}

bool is_invertible(const Circulant& x, double rel_tol) {
  if (rel_tol < 0.0) rel_tol = default_pinv_tol(x.order());
  return null_channels(spectrum(x), rel_tol).empty();
}

DenseMatrix fourier_matrix(std::size_t d) {
  const FourierContext ctx(d);
  DenseMatrix s(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s(i, j) = ctx.omega_pow(i * j);
  return s;
}

DenseMatrix inverse_fourier_matrix(std::size_t d) {
  const FourierContext ctx(d);
  DenseMatrix s(d);
  const double inv = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s(i, j) = ctx.conj_omega_pow(i * j) * inv;
  return s;
}

}  // namespace circfn
