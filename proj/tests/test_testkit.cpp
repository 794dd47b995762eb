#include <doctest.h>

#include <cmath>
#include <random>

#include "circfn/error.hpp"
#include "circfn/testkit.hpp"

using namespace circfn;
using namespace circfn::testkit;

namespace {

double max_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

CircPoly poly(std::initializer_list<Circulant> cs) { return CircPoly(std::vector<Circulant>(cs)); }

Circulant with_zero_channels(std::mt19937_64& rng, std::size_t d) {
  Spectrum s = spectrum(random_circulant(rng, d));
  std::bernoulli_distribution drop(0.4);
  for (std::size_t i = 0; i < d; ++i)
    if (drop(rng)) s[i] = 0.0;
  return from_spectrum(s);
}

}  // namespace

TEST_CASE("dense_conjugate examples") {
  CHECK(max_diff(dense_conjugate(Circulant::identity(3)), DenseMatrix::identity(3)) < 1e-12);
  const DenseMatrix m = dense_conjugate(Circulant{1.0, 1.0});
  CHECK(std::abs(m(0, 0) - 2.0) < 1e-12);
  CHECK(std::abs(m(1, 1)) < 1e-12);
  CHECK(off_diagonal_max(m) < 1e-12);
}

TEST_CASE("Fourier matrix times its explicit inverse") {
  for (std::size_t d = 2; d <= 64; ++d) {
    const DenseMatrix p = dense_mul(dense_fourier(d), dense_fourier_inverse(d));
    CHECK(max_diff(p, DenseMatrix::identity(d)) < 1e-10);
  }
}

TEST_CASE("dense_mul rejects mismatched orders") {
  CHECK_THROWS_AS(dense_mul(DenseMatrix::identity(2), DenseMatrix::identity(3)), InvalidDimension);
}

TEST_CASE("penrose_check examples") {
  const PenroseReport id = penrose_check(Circulant::identity(4), Circulant::identity(4));
  CHECK(id.max_deviation == 0.0);
  const PenroseReport e = penrose_check(Circulant::ones(2), Circulant{0.25, 0.25});
  CHECK(e.max_deviation <= 1e-12);
  CHECK(e.max_deviation >= 0.0);
  CHECK(e.max_deviation == std::max({e.axa, e.xax, e.ax_hermitian, e.xa_hermitian}));
  const PenroseReport wrong = penrose_check(Circulant::ones(2), Circulant{0.5, 0.5});
  CHECK(wrong.max_deviation > 0.1);
}

TEST_CASE("property: pseudoinverse passes the Penrose conditions") {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t d = 2 + static_cast<std::size_t>(rep % 15);
    const Circulant x = with_zero_channels(rng, d);
    CHECK(penrose_check(x, pseudoinverse(x)).max_deviation <= 1e-9);
  }
}

TEST_CASE("property: Penrose conditions pin down the pseudoinverse") {
  std::mt19937_64 rng(72);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t d = 2 + static_cast<std::size_t>(rep % 7);
    const Circulant a = with_zero_channels(rng, d);
    const Circulant plus = pseudoinverse(a);
    for (double eps : {1e-14, 1e-12, 1e-10, 1e-8, 1e-6, 1e-3}) {
      const Circulant y = plus + scale(eps, random_circulant(rng, d));
      if (penrose_check(a, y).max_deviation <= 1e-9) CHECK(max_abs_diff(y, plus) <= 1e-7);
    }
  }
}

TEST_CASE("property: fast operations agree with dense counterparts") {
  std::mt19937_64 rng(73);
  for (std::size_t d = 2; d <= 32; ++d)
    for (int rep = 0; rep < 200 / 31 + 1; ++rep) {
      const Circulant x = random_circulant(rng, d);
      const Circulant y = random_circulant(rng, d);
      const double tol = 1e-10 * static_cast<double>(d);
      CHECK(max_diff(dense_circulant(x + y), dense_add(dense_circulant(x), dense_circulant(y))) < tol);
      CHECK(max_diff(dense_circulant(x - y), dense_sub(dense_circulant(x), dense_circulant(y))) < tol);
      CHECK(max_diff(dense_circulant(x * y), dense_mul(dense_circulant(x), dense_circulant(y))) < tol);
      CHECK(max_diff(dense_circulant(x), to_dense(x)) == 0.0);
      const DenseMatrix conj = dense_conjugate(x);
      const Spectrum s = spectrum(x);
      CHECK(off_diagonal_max(conj) < tol);
      for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(conj(i, i) - s[i]) < tol);
      CHECK(std::abs(frobenius_norm(x) - dense_frobenius(dense_circulant(x))) < tol);
    }
}

TEST_CASE("property: dense_poly_eval matches poly_eval") {
  std::mt19937_64 rng(74);
  for (std::size_t d : {2u, 5u, 9u}) {
    const CircPoly p = random_poly(rng, d, 4);
    const Circulant z = random_circulant(rng, d);
    CHECK(max_diff(dense_circulant(poly_eval(p, z)), dense_poly_eval(p, dense_circulant(z))) < 1e-9);
  }
}

TEST_CASE("brute_force_roots examples") {
  const Circulant i = Circulant::identity(2);
  const Circulant o = Circulant::zero(2);
  const auto four = brute_force_roots(poly({i, o, neg(i)}));
  REQUIRE(four.size() == 4);
  for (const auto& r : four) {
    const Spectrum s = spectrum(r);
    CHECK(std::abs(std::abs(s[0].real()) - 1.0) < 1e-8);
    CHECK(std::abs(std::abs(s[1].real()) - 1.0) < 1e-8);
  }
  const auto one = brute_force_roots(poly({i, neg(i)}));
  REQUIRE(one.size() == 1);
  CHECK(approx_equal(one[0], i, 1e-8));
  CHECK(brute_force_roots(poly({Circulant::ones(2), i})).empty());
  CHECK_THROWS_AS(brute_force_roots(CircPoly::monomial(3, 1)), InvalidDimension);
}

TEST_CASE("finite_difference_derivative follows the analytic derivative") {
  std::mt19937_64 rng(75);
  const CircPoly p = random_poly(rng, 3, 3);
  const Circulant z = random_circulant(rng, 3);
  const auto f = CircFunction::poly(p);
  const Circulant fd = finite_difference_derivative(f, z, Circulant::identity(3), 1e-5);
  const Circulant exact = derivative(f, z);
  CHECK(max_abs_diff(fd, exact) < 1e-6 * std::max(1.0, frobenius_norm(exact)));
}

TEST_CASE("random generators are reproducible by seed") {
  std::mt19937_64 a(9);
  std::mt19937_64 b(9);
  CHECK(max_abs_diff(random_circulant(a, 7), random_circulant(b, 7)) == 0.0);
  const Circulant k = random_integer_circulant(a, 6, -3, 3);
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(k[j].imag() == 0.0);
    CHECK(k[j].real() == std::round(k[j].real()));
    CHECK(std::abs(k[j].real()) <= 3.0);
  }
  const CircPoly p = random_poly(a, 4, 3);
  CHECK(p.degree() == 3);
  CHECK(classify(p).kind == Regularity::Regular);
}
