#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace circfn {

using Complex = std::complex<double>;

/// Multiplication switches from the O(d^2) convolution to the FFT path at
/// this order unless a caller passes its own threshold.
inline constexpr std::size_t kDefaultFftThreshold = 32;

/// Default tolerance of approx_equal (max entrywise modulus difference).
inline constexpr double kDefaultEqualityTol = 1e-9;

/// Square complex matrix, row-major. Only the oracle paths build these.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t order);
  static DenseMatrix identity(std::size_t order);

  std::size_t order() const noexcept { return order_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * order_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }
  std::span<const Complex> data() const noexcept { return data_; }

 private:
  std::size_t order_;
  std::vector<Complex> data_;
};

/// A d x d circulant matrix circ(x_0, ..., x_{d-1}), stored as its first row.
///
/// The dense form holds x_j at every position (i, (i + j) mod d), so that
/// X = sum_j x_j C^j with C the elementary (shift) circulant. Values are
/// immutable once built.
class Circulant {
 public:
  /// Throws InvalidDimension when row.size() < 2.
  explicit Circulant(std::vector<Complex> row);
  Circulant(std::initializer_list<Complex> row);

  static Circulant zero(std::size_t d);
  static Circulant identity(std::size_t d);
  static Circulant elementary(std::size_t d);
  static Circulant ones(std::size_t d);
  static Circulant from_row(std::span<const Complex> row) { return Circulant({row.begin(), row.end()}); }

  std::size_t order() const noexcept { return row_.size(); }
  std::span<const Complex> row() const noexcept { return row_; }
  const Complex& operator[](std::size_t j) const { return row_[j]; }

 private:
  std::vector<Complex> row_;
};

/// Throws InvalidDimension if X and Y differ in order.
void require_same_order(const Circulant& x, const Circulant& y);

Circulant add(const Circulant& x, const Circulant& y);
Circulant sub(const Circulant& x, const Circulant& y);
Circulant neg(const Circulant& x);
Circulant scale(Complex a, const Circulant& x);

/// Cyclic convolution of the rows. Uses the FFT path when order() >= fft_threshold.
Circulant mul(const Circulant& x, const Circulant& y, std::size_t fft_threshold = kDefaultFftThreshold);

/// Direct O(d^2) convolution. Terms are paired symmetrically so that
/// mul_naive(x, y) and mul_naive(y, x) are bitwise identical.
Circulant mul_naive(const Circulant& x, const Circulant& y);

/// Convolution through forward/backward FFTs of length d.
Circulant mul_fft(const Circulant& x, const Circulant& y);

/// Binary powering; pow(x, 0) is the identity.
Circulant pow(const Circulant& x, unsigned k, std::size_t fft_threshold = kDefaultFftThreshold);

DenseMatrix to_dense(const Circulant& x);

/// sqrt(d * sum |x_j|^2), the Frobenius norm of the dense expansion.
double frobenius_norm(const Circulant& x);

/// Largest |x_j - y_j|.
double max_abs_diff(const Circulant& x, const Circulant& y);

bool approx_equal(const Circulant& x, const Circulant& y, double tol = kDefaultEqualityTol);

inline Circulant operator+(const Circulant& x, const Circulant& y) { return add(x, y); }
inline Circulant operator-(const Circulant& x, const Circulant& y) { return sub(x, y); }
inline Circulant operator-(const Circulant& x) { return neg(x); }
inline Circulant operator*(const Circulant& x, const Circulant& y) { return mul(x, y); }
inline Circulant operator*(Complex a, const Circulant& x) { return scale(a, x); }

}  // namespace circfn
