#include "circfn/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circfn/error.hpp"
#include "circfn/fft.hpp"

namespace circfn {

DenseMatrix::DenseMatrix(std::size_t order) : order_(order), data_(order * order) {}

DenseMatrix DenseMatrix::identity(std::size_t order) {
  DenseMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
  return m;
}

Circulant::Circulant(std::vector<Complex> row) : row_(std::move(row)) {
  if (row_.size() < 2) {
    throw InvalidDimension("circulant order must be at least 2, got " + std::to_string(row_.size()));
  }
}

Circulant::Circulant(std::initializer_list<Complex> row) : Circulant(std::vector<Complex>(row)) {}

Circulant Circulant::zero(std::size_t d) {
  if (d < 2) throw InvalidDimension("circulant order must be at least 2, got " + std::to_string(d));
  return Circulant(std::vector<Complex>(d));
}

Circulant Circulant::identity(std::size_t d) {
  if (d < 2) throw InvalidDimension("circulant order must be at least 2, got " + std::to_string(d));
  std::vector<Complex> row(d);
  row[0] = 1.0;
  return Circulant(std::move(row));
}

Circulant Circulant::elementary(std::size_t d) {
  if (d < 2) throw InvalidDimension("circulant order must be at least 2, got " + std::to_string(d));
  std::vector<Complex> row(d);
  row[1] = 1.0;
  return Circulant(std::move(row));
}

Circulant Circulant::ones(std::size_t d) {
  if (d < 2) throw InvalidDimension("circulant order must be at least 2, got " + std::to_string(d));
  return Circulant(std::vector<Complex>(d, Complex(1.0)));
}

void require_same_order(const Circulant& x, const Circulant& y) {
  if (x.order() != y.order()) {
    throw InvalidDimension("circulant order mismatch: " + std::to_string(x.order()) + " vs " +
                           std::to_string(y.order()));
  }
}

namespace {

template <class Op>
Circulant entrywise(const Circulant& x, const Circulant& y, Op op) {
  require_same_order(x, y);
  std::vector<Complex> row(x.order());
  for (std::size_t j = 0; j < row.size(); ++j) row[j] = op(x[j], y[j]);
  return Circulant(std::move(row));
}

}  // namespace

Circulant add(const Circulant& x, const Circulant& y) {
  return entrywise(x, y, [](Complex a, Complex b) { return a + b; });
}

Circulant sub(const Circulant& x, const Circulant& y) {
  return entrywise(x, y, [](Complex a, Complex b) { return a - b; });
}

Circulant neg(const Circulant& x) {
  std::vector<Complex> row(x.row().begin(), x.row().end());
  for (auto& v : row) v = -v;
  return Circulant(std::move(row));
}

Circulant scale(Complex a, const Circulant& x) {
  std::vector<Complex> row(x.row().begin(), x.row().end());
  for (auto& v : row) v *= a;
  return Circulant(std::move(row));
}

Circulant mul_naive(const Circulant& x, const Circulant& y) {
  require_same_order(x, y);
  const std::size_t d = x.order();
  const Complex* xs = x.row().data();
  const Complex* ys = y.row().data();
  std::vector<Complex> out(d);
  // Term a of output k is x_a y_{k-a}; swapping x and y maps term a to term
  // k-a, so summing each orbit {a, k-a} as one pair in order of its smaller
  // index makes the result symmetric bit for bit.
  for (std::size_t k = 0; k < d; ++k) {
    Complex acc = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t b = a <= k ? k - a : k + d - a;
      if (a < b) {
        acc += xs[a] * ys[b] + xs[b] * ys[a];
      } else if (a == b) {
        acc += xs[a] * ys[a];
      }
    }
    out[k] = acc;
  }
  return Circulant(std::move(out));
}

Circulant mul_fft(const Circulant& x, const Circulant& y) {
  require_same_order(x, y);
  const std::size_t d = x.order();
  const FftPlan& plan = fft_plan(d);
  std::vector<Complex> fx(x.row().begin(), x.row().end());
  std::vector<Complex> fy(y.row().begin(), y.row().end());
  plan.forward(fx);
  plan.forward(fy);
  for (std::size_t i = 0; i < d; ++i) fx[i] *= fy[i];
  plan.backward(fx);
  const double inv = 1.0 / static_cast<double>(d);
  for (auto& v : fx) v *= inv;
  return Circulant(std::move(fx));
}

Circulant mul(const Circulant& x, const Circulant& y, std::size_t fft_threshold) {
  return x.order() >= fft_threshold ? mul_fft(x, y) : mul_naive(x, y);
}

Circulant pow(const Circulant& x, unsigned k, std::size_t fft_threshold) {
  Circulant result = Circulant::identity(x.order());
  Circulant base = x;
  while (k > 0) {
    if (k & 1u) result = mul(result, base, fft_threshold);
    k >>= 1;
    if (k > 0) base = mul(base, base, fft_threshold);
  }
  return result;
}

DenseMatrix to_dense(const Circulant& x) {
  const std::size_t d = x.order();
  DenseMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, (i + j) % d) = x[j];
  return m;
}

double frobenius_norm(const Circulant& x) {
  double s = 0.0;
  for (const auto& v : x.row()) s += std::norm(v);
  return std::sqrt(static_cast<double>(x.order()) * s);
}

double max_abs_diff(const Circulant& x, const Circulant& y) {
  require_same_order(x, y);
  double m = 0.0;
  for (std::size_t j = 0; j < x.order(); ++j) m = std::max(m, std::abs(x[j] - y[j]));
  return m;
}

bool approx_equal(const Circulant& x, const Circulant& y, double tol) {
  return x.order() == y.order() && max_abs_diff(x, y) <= tol;
}

}  // namespace circfn
