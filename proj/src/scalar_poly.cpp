#include "circfn/funcalc.hpp"

#include <algorithm>
#include <cmath>

namespace circfn {

ScalarPoly::ScalarPoly(std::vector<Complex> coeffs, std::size_t channel)
    : coeffs_(std::move(coeffs)), channel_(channel) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

std::size_t ScalarPoly::effective_degree() const noexcept {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != Complex(0.0)) return coeffs_.size() - 1 - k;
  return 0;
}

bool ScalarPoly::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex(0.0); });
}

ScalarPoly ScalarPoly::trimmed() const {
  const std::size_t n = effective_degree();
  return ScalarPoly({coeffs_.end() - static_cast<std::ptrdiff_t>(n + 1), coeffs_.end()}, channel_);
}

ScalarPoly ScalarPoly::derivative() const {
  const std::size_t n = degree();
  if (n == 0) return ScalarPoly({Complex(0.0)}, channel_);
  std::vector<Complex> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = coeffs_[k] * static_cast<double>(n - k);
  return ScalarPoly(std::move(d), channel_);
}

Complex ScalarPoly::operator()(Complex u) const noexcept {
  Complex acc = 0.0;
  for (const auto& c : coeffs_) acc = acc * u + c;
  return acc;
}

std::pair<Complex, Complex> ScalarPoly::eval_with_derivative(Complex u) const noexcept {
  Complex p = 0.0;
  Complex dp = 0.0;
  for (const auto& c : coeffs_) {
    dp = dp * u + p;
    p = p * u + c;
  }
  return {p, dp};
}

double ScalarPoly::magnitude(double abs_u) const noexcept {
  double acc = 0.0;
  for (const auto& c : coeffs_) acc = acc * abs_u + std::abs(c);
  return acc;
}

double ScalarPoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace circfn
