#include "circfn/testkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "circfn/error.hpp"

namespace circfn::testkit {

namespace {

void require_same(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.order() != b.order()) throw InvalidDimension("dense order mismatch");
}

// Gauss-Jordan with partial pivoting.
DenseMatrix dense_inverse(const DenseMatrix& a) {
  const std::size_t n = a.order();
  DenseMatrix m = a;
  DenseMatrix inv = DenseMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (m(piv, col) == Complex(0.0)) throw InvalidIncrement("dense matrix is singular");
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(m(col, c), m(piv, c));
      std::swap(inv(col, c), inv(piv, c));
    }
    const Complex s = 1.0 / m(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      m(col, c) *= s;
      inv(col, c) *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = m(r, col);
      if (f == Complex(0.0)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) -= f * m(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

Circulant first_row(const DenseMatrix& a) {
  std::vector<Complex> row(a.order());
  for (std::size_t j = 0; j < a.order(); ++j) row[j] = a(0, j);
  return Circulant(std::move(row));
}

using Mat2 = std::array<Complex, 4>;  // row-major 2x2

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

}  // namespace

DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b) {
  require_same(a, b);
  const std::size_t n = a.order();
  DenseMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix dense_add(const DenseMatrix& a, const DenseMatrix& b) {
  require_same(a, b);
  DenseMatrix c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

DenseMatrix dense_sub(const DenseMatrix& a, const DenseMatrix& b) {
  require_same(a, b);
  DenseMatrix c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

DenseMatrix dense_adjoint(const DenseMatrix& a) {
  DenseMatrix c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

double dense_frobenius(const DenseMatrix& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

DenseMatrix dense_circulant(const Circulant& x) {
  // Row i is the first row shifted right i times: entry (i, j) = x_{(j - i) mod d}.
  const std::size_t d = x.order();
  DenseMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = x[(j + d - i) % d];
  return m;
}

DenseMatrix dense_fourier(std::size_t d) {
  DenseMatrix s(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * j) % d) / static_cast<double>(d);
      s(i, j) = std::polar(1.0, angle);
    }
  return s;
}

DenseMatrix dense_fourier_inverse(std::size_t d) {
  DenseMatrix s = dense_fourier(d);
  DenseMatrix inv(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) inv(i, j) = std::conj(s(i, j)) / static_cast<double>(d);
  return inv;
}

DenseMatrix dense_conjugate(const DenseMatrix& x) {
  const std::size_t d = x.order();
  return dense_mul(dense_mul(dense_fourier(d), x), dense_fourier_inverse(d));
}

DenseMatrix dense_conjugate(const Circulant& x) { return dense_conjugate(dense_circulant(x)); }

double off_diagonal_max(const DenseMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j)
      if (i != j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

DenseMatrix dense_poly_eval(const CircPoly& p, const DenseMatrix& z) {
  DenseMatrix acc = dense_circulant(p[0]);
  for (std::size_t k = 1; k <= p.degree(); ++k) acc = dense_add(dense_mul(acc, z), dense_circulant(p[k]));
  return acc;
}

PenroseReport penrose_check(const Circulant& a, const Circulant& x) {
  if (a.order() != x.order()) throw InvalidDimension("penrose_check order mismatch");
  const DenseMatrix A = dense_circulant(a);
  const DenseMatrix X = dense_circulant(x);
  const DenseMatrix AX = dense_mul(A, X);
  const DenseMatrix XA = dense_mul(X, A);
  PenroseReport r;
  r.axa = dense_frobenius(dense_sub(dense_mul(AX, A), A));
  r.xax = dense_frobenius(dense_sub(dense_mul(XA, X), X));
  r.ax_hermitian = dense_frobenius(dense_sub(dense_adjoint(AX), AX));
  r.xa_hermitian = dense_frobenius(dense_sub(dense_adjoint(XA), XA));
  r.max_deviation = std::max({r.axa, r.xax, r.ax_hermitian, r.xa_hermitian});
  return r;
}

std::vector<Circulant> brute_force_roots(const CircPoly& p, const GridSpec& grid) {
  if (p.order() != 2) throw InvalidDimension("brute_force_roots supports d = 2 only");
  if (grid.steps < 3) throw InvalidArgument("grid needs at least 3 steps");

  std::vector<Mat2> coeffs;
  for (const auto& c : p.coeffs()) {
    const DenseMatrix m = dense_circulant(c);
    coeffs.push_back({m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
  }
  double coeff_scale = 1.0;
  for (const auto& c : coeffs)
    for (const auto& v : c) coeff_scale = std::max(coeff_scale, std::abs(v));

  // Squared Frobenius residual at the circulant with eigenvalues (u1, u2):
  // z0 = (u1 + u2) / 2, z1 = (u1 - u2) / 2.
  auto residual2 = [&](const std::array<double, 4>& x) {
    const Complex u1(x[0], x[1]);
    const Complex u2(x[2], x[3]);
    const Complex z0 = 0.5 * (u1 + u2);
    const Complex z1 = 0.5 * (u1 - u2);
    const Mat2 z{z0, z1, z1, z0};
    Mat2 acc = coeffs[0];
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
      acc = mat2_mul(acc, z);
      for (std::size_t e = 0; e < 4; ++e) acc[e] += coeffs[k][e];
    }
    double s = 0.0;
    for (const auto& v : acc) s += std::norm(v);
    return s;
  };

  const std::size_t n = grid.steps;
  const double h = 2.0 * grid.radius / static_cast<double>(n - 1);
  auto coord = [&](std::size_t k) { return -grid.radius + h * static_cast<double>(k); };
  std::vector<double> values(n * n * n * n);
  auto at = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e) -> double& {
    return values[((a * n + b) * n + c) * n + e];
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) at(a, b, c, e) = residual2({coord(a), coord(b), coord(c), coord(e)});

  std::vector<std::array<double, 4>> found;
  const double accept2 = grid.accept * grid.accept;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          const double v = at(a, b, c, e);
          if (v > accept2) continue;
          const std::array<std::size_t, 4> idx{a, b, c, e};
          bool local_min = true;
          for (std::size_t axis = 0; axis < 4 && local_min; ++axis) {
            for (int sgn : {-1, 1}) {
              auto j = idx;
              if (sgn < 0 && j[axis] == 0) continue;
              if (sgn > 0 && j[axis] == n - 1) continue;
              j[axis] = sgn < 0 ? j[axis] - 1 : j[axis] + 1;
              if (at(j[0], j[1], j[2], j[3]) < v) local_min = false;
            }
          }
          if (!local_min) continue;

          // Compass search on the squared residual.
          std::array<double, 4> x{coord(a), coord(b), coord(c), coord(e)};
          double fx = v;
          double step = h;
          while (step > grid.refine_step * std::max(1.0, std::abs(x[0]) + std::abs(x[2]))) {
            bool moved = false;
            for (std::size_t axis = 0; axis < 4; ++axis) {
              for (double sgn : {-1.0, 1.0}) {
                auto y = x;
                y[axis] += sgn * step;
                const double fy = residual2(y);
                if (fy < fx) {
                  x = y;
                  fx = fy;
                  moved = true;
                }
              }
            }
            if (!moved) step *= 0.5;
          }
          if (std::sqrt(fx) <= 1e-9 * coeff_scale) found.push_back(x);
        }

  std::vector<Circulant> out;
  for (const auto& x : found) {
    const Complex u1(x[0], x[1]);
    const Complex u2(x[2], x[3]);
    Circulant r{0.5 * (u1 + u2), 0.5 * (u1 - u2)};
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Circulant& s) {
      return std::max(std::abs(s[0] - r[0]), std::abs(s[1] - r[1])) <= 1e-8;
    });
    if (!dup) out.push_back(std::move(r));
  }
  return out;
}

Circulant finite_difference_derivative(const CircFunction& f, const Circulant& z, const Circulant& direction,
                                       double h) {
  const Circulant step = scale(h, direction);
  const DenseMatrix fp = dense_circulant(func_eval(f, add(z, step)).value);
  const DenseMatrix fm = dense_circulant(func_eval(f, sub(z, step)).value);
  DenseMatrix df = dense_sub(fp, fm);
  // dF (2 h C)^{-1}
  const DenseMatrix dz = dense_circulant(scale(2.0 * h, direction));
  return first_row(dense_mul(df, dense_inverse(dz)));
}

Complex random_complex(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

Circulant random_circulant(std::mt19937_64& rng, std::size_t d, double scale) {
  std::vector<Complex> row(d);
  for (auto& v : row) v = random_complex(rng, scale);
  return Circulant(std::move(row));
}

Circulant random_integer_circulant(std::mt19937_64& rng, std::size_t d, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<Complex> row(d);
  for (auto& v : row) v = static_cast<double>(dist(rng));
  return Circulant(std::move(row));
}

CircPoly random_poly(std::mt19937_64& rng, std::size_t d, std::size_t n) {
  std::vector<Circulant> cs;
  for (std::size_t k = 0; k <= n; ++k) cs.push_back(random_circulant(rng, d));
  return CircPoly(std::move(cs));
}

}  // namespace circfn::testkit
