#include <doctest.h>

#include <cmath>
#include <random>

#include "circfn/error.hpp"
#include "circfn/funcalc.hpp"
#include "circfn/testkit.hpp"

using namespace circfn;

namespace {

CircPoly poly(std::initializer_list<Circulant> cs) { return CircPoly(std::vector<Circulant>(cs)); }

// Z^2 - I
CircPoly z2_minus_i(std::size_t d) {
  return poly({Circulant::identity(d), Circulant::zero(d), neg(Circulant::identity(d))});
}

double rel(const Circulant& a, const Circulant& b) { return frobenius_norm(a - b) / std::max(1e-300, frobenius_norm(b)); }

}  // namespace

TEST_CASE("ScalarPoly basics") {
  const ScalarPoly p({0.0, 0.0, 1.0, -3.0, 2.0}, 2);
  CHECK(p.degree() == 4);
  CHECK(p.effective_degree() == 2);
  CHECK(p.trimmed().coeffs().size() == 3);
  CHECK(p.channel() == 2);
  CHECK(p(Complex(1.0)) == Complex(0.0));
  const auto [v, dv] = p.eval_with_derivative(Complex(3.0));
  CHECK(v == Complex(2.0));
  CHECK(dv == Complex(3.0));
  CHECK(p.magnitude(1.0) == doctest::Approx(6.0));
  CHECK(ScalarPoly({0.0, 0.0}).is_zero());
  CHECK(ScalarPoly({0.0, 5.0}).is_nonzero_constant());
  CHECK(ScalarPoly({1.0, 0.0, 0.0}).derivative().coeffs() == std::vector<Complex>{2.0, 0.0});
}

TEST_CASE("CircPoly construction") {
  CHECK_THROWS_AS(CircPoly({}), InvalidArgument);
  CHECK_THROWS_AS(poly({Circulant::identity(2), Circulant::identity(3)}), InvalidDimension);
  const CircPoly m = CircPoly::monomial(3, 4);
  CHECK(m.degree() == 4);
  CHECK(m.order() == 3);
}

TEST_CASE("poly_eval examples") {
  const Circulant c = Circulant::elementary(2);
  CHECK(approx_equal(poly_eval(z2_minus_i(2), c), Circulant::zero(2), 0.0));

  std::mt19937_64 rng(31);
  const Circulant a0 = testkit::random_circulant(rng, 4);
  CHECK(approx_equal(poly_eval(CircPoly::constant(a0), testkit::random_circulant(rng, 4)), a0, 0.0));

  // E Z^n at d = 5: only channel 1 survives, as 5 u_1^n.
  const Circulant z = testkit::random_circulant(rng, 5);
  const std::size_t n = 3;
  std::vector<Circulant> cs(n + 1, Circulant::zero(5));
  cs[0] = Circulant::ones(5);
  const Spectrum s = spectrum(poly_eval(CircPoly(cs), z));
  const Complex u1 = spectrum(z)[0];
  CHECK(std::abs(s[0] - 5.0 * u1 * u1 * u1) < 1e-10 * std::abs(s[0]));
  for (std::size_t i = 1; i < 5; ++i) CHECK(std::abs(s[i]) < 1e-10);

  CHECK_THROWS_AS(poly_eval(z2_minus_i(2), Circulant::identity(3)), InvalidDimension);
}

TEST_CASE("poly_eval agrees with dense Horner") {
  std::mt19937_64 rng(32);
  for (std::size_t d : {2u, 3u, 6u}) {
    const CircPoly p = testkit::random_poly(rng, d, 3);
    const Circulant z = testkit::random_circulant(rng, d);
    const DenseMatrix dense = testkit::dense_poly_eval(p, testkit::dense_circulant(z));
    CHECK(testkit::dense_frobenius(testkit::dense_sub(to_dense(poly_eval(p, z)), dense)) < 1e-12 * testkit::dense_frobenius(dense));
  }
}

TEST_CASE("channel_polys examples") {
  const auto ch = channel_polys(poly({Circulant::ones(2), Circulant::identity(2)}));
  REQUIRE(ch.size() == 2);
  CHECK(std::abs(ch[0].coeffs()[0] - 2.0) < 1e-15);
  CHECK(std::abs(ch[0].coeffs()[1] - 1.0) < 1e-15);
  CHECK(ch[1].coeffs()[0] == Complex(0.0));
  CHECK(std::abs(ch[1].coeffs()[1] - 1.0) < 1e-15);
  CHECK(ch[1].channel() == 2);

  std::mt19937_64 rng(33);
  const Circulant a = testkit::random_circulant(rng, 3);
  const auto zc = channel_polys(poly({Circulant::identity(3), neg(a)}));
  const Spectrum sa = spectrum(a);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(zc[i].coeffs()[0] - 1.0) < 1e-15);
    CHECK(std::abs(zc[i].coeffs()[1] + sa[i]) < 1e-15);
  }

  // E Z^n with d prime: channel 1 is p u^n, the rest vanish exactly after flushing.
  for (std::size_t p : {3u, 5u, 7u}) {
    std::vector<Circulant> cs(3, Circulant::zero(p));
    cs[0] = Circulant::ones(p);
    const auto ep = channel_polys(CircPoly(cs));
    CHECK(std::abs(ep[0].coeffs()[0] - static_cast<double>(p)) < 1e-12);
    for (std::size_t i = 1; i < p; ++i) CHECK(ep[i].is_zero());
  }
}

TEST_CASE("classify examples") {
  CHECK(classify(poly({Circulant::identity(3), Circulant::ones(3)})).kind == Regularity::Regular);
  const auto s = classify(poly({Circulant::ones(4), Circulant::identity(4)}));
  CHECK(s.kind == Regularity::Singular);
  CHECK(s.vanishing_channels == std::vector<std::size_t>{2, 3, 4});
  CHECK(classify(poly({Circulant{2.0, 1.0}, Circulant::zero(2)})).kind == Regularity::Regular);
}

TEST_CASE("function construction") {
  CHECK_THROWS_AS(CircFunction::rational(CircPoly::monomial(2, 1), poly({Circulant::ones(2), Circulant::ones(2)})),
                  InvalidArgument);
  const auto f = CircFunction::rational(CircPoly::monomial(2, 1), CircPoly::monomial(2, 2));
  CHECK(f.kind() == FunctionKind::Rational);
  CHECK(f.order() == 2);
  CHECK(CircFunction::exppoly(CircPoly::monomial(3, 0), CircPoly::monomial(3, 1)).kind() == FunctionKind::ExpPoly);
}

TEST_CASE("func_eval examples") {
  const auto inv = CircFunction::rational(CircPoly::constant(Circulant::identity(2)), CircPoly::monomial(2, 1));
  const EvalResult r = func_eval(inv, Circulant{2.0, 1.0});
  CHECK(approx_equal(r.value, Circulant{2.0 / 3.0, -1.0 / 3.0}, 1e-12));
  CHECK(r.flagged_channels.empty());

  std::mt19937_64 rng(34);
  const auto e0 = CircFunction::exppoly(CircPoly::constant(Circulant::identity(3)), CircPoly::constant(Circulant::zero(3)));
  CHECK(approx_equal(func_eval(e0, testkit::random_circulant(rng, 3)).value, Circulant::identity(3), 1e-14));

  // Q(Z) = Z + E is singular on the line Z = c E.
  const auto f = CircFunction::rational(CircPoly::monomial(2, 2), poly({Circulant::identity(2), Circulant::ones(2)}));
  const EvalResult fr = func_eval(f, scale(0.7, Circulant::ones(2)));
  CHECK(fr.flagged_channels == std::vector<std::size_t>{2});
  CHECK(std::abs(spectrum(fr.value)[1]) < 1e-12);
}

TEST_CASE("property: channel consistency of func_eval") {
  std::mt19937_64 rng(35);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = 2 + static_cast<std::size_t>(rep % 15);
    const Circulant z = testkit::random_circulant(rng, d, 0.5);
    const CircPoly p = testkit::random_poly(rng, d, 2);
    const CircPoly q = testkit::random_poly(rng, d, 2);
    const CircPoly g({scale(0.3, testkit::random_circulant(rng, d)), scale(0.3, testkit::random_circulant(rng, d))});
    for (const auto& f : {CircFunction::poly(p), CircFunction::rational(p, q), CircFunction::exppoly(p, g)}) {
      const Spectrum got = spectrum(func_eval(f, z).value);
      const Spectrum u = spectrum(z);
      const auto ch = channel_functions(f);
      // Normwise: rounding in the row representation scales with the largest channel.
      double peak = 1.0;
      for (std::size_t i = 0; i < d; ++i) peak = std::max(peak, std::abs(ch[i].value(u[i])));
      for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(got[i] - ch[i].value(u[i])) <= 1e-9 * peak);
    }
  }
}

TEST_CASE("derivative examples") {
  std::mt19937_64 rng(36);
  for (std::size_t n = 1; n <= 6; ++n) {
    const Circulant z = testkit::random_circulant(rng, 4);
    const Circulant d = derivative(CircFunction::poly(CircPoly::monomial(4, n)), z);
    const Circulant expect = scale(static_cast<double>(n), pow(z, static_cast<unsigned>(n - 1)));
    CHECK(rel(d, expect) < 1e-10);
  }
  const Circulant z = testkit::random_circulant(rng, 3);
  CHECK(approx_equal(derivative(CircFunction::poly(CircPoly::monomial(3, 1)), z), Circulant::identity(3), 1e-14));

  const auto inv = CircFunction::rational(CircPoly::constant(Circulant::identity(2)), CircPoly::monomial(2, 1));
  // channel values -1/9 and -1
  CHECK(approx_equal(derivative(inv, Circulant{2.0, 1.0}), Circulant{-5.0 / 9.0, 4.0 / 9.0}, 1e-12));

  const auto f = CircFunction::rational(CircPoly::monomial(2, 1), poly({Circulant::identity(2), Circulant::ones(2)}));
  try {
    (void)derivative(f, scale(2.0, Circulant::ones(2)));
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.channel() == 2);
  }
}

TEST_CASE("derivative agrees with the formal polynomial derivative and the dense difference quotient") {
  std::mt19937_64 rng(37);
  for (std::size_t d : {2u, 3u, 5u}) {
    const CircPoly p = testkit::random_poly(rng, d, 3);
    const Circulant z = testkit::random_circulant(rng, d);
    CHECK(rel(derivative(CircFunction::poly(p), z), poly_eval(poly_derivative(p), z)) < 1e-10);

    const CircPoly q = testkit::random_poly(rng, d, 2);
    const CircPoly g = CircPoly({scale(0.2, testkit::random_circulant(rng, d)), testkit::random_circulant(rng, d)});
    for (const auto& f : {CircFunction::poly(p), CircFunction::rational(p, q), CircFunction::exppoly(p, g)}) {
      const Circulant fd = testkit::finite_difference_derivative(f, z, Circulant::identity(d), 1e-5);
      CHECK(rel(derivative(f, z), fd) < 1e-6);
    }
  }
}

TEST_CASE("property: product rule") {
  std::mt19937_64 rng(38);
  for (std::size_t d : {2u, 4u, 7u}) {
    const CircPoly p = testkit::random_poly(rng, d, 2);
    const CircPoly q = testkit::random_poly(rng, d, 3);
    const Circulant z = testkit::random_circulant(rng, d);
    const Circulant lhs = derivative(CircFunction::poly(poly_mul(p, q)), z);
    const Circulant rhs = derivative(CircFunction::poly(p), z) * poly_eval(q, z) +
                          poly_eval(p, z) * derivative(CircFunction::poly(q), z);
    CHECK(rel(lhs, rhs) < 1e-8);
    CHECK(rel(poly_eval(poly_add(p, q), z), poly_eval(p, z) + poly_eval(q, z)) < 1e-12);
  }
}

TEST_CASE("property: derivative channel is a degree n-1 polynomial with leading n * spectrum(A_0)") {
  std::mt19937_64 rng(39);
  const std::size_t d = 3;
  for (std::size_t n : {1u, 2u, 4u}) {
    const CircPoly p = testkit::random_poly(rng, d, n);
    const Spectrum lead = spectrum(p.leading());
    // Sample at Z_k = from_spectrum(s_k (1, ..., 1)) = s_k I on n distinct nodes and
    // read off the top divided difference per channel.
    std::vector<Complex> nodes;
    std::vector<Spectrum> vals;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex s(0.3 + 0.7 * static_cast<double>(k), 0.2 * static_cast<double>(k));
      nodes.push_back(s);
      vals.push_back(spectrum(derivative(CircFunction::poly(p), scale(s, Circulant::identity(d)))));
    }
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Complex> dd(n);
      for (std::size_t k = 0; k < n; ++k) dd[k] = vals[k][i];
      for (std::size_t level = 1; level < n; ++level)
        for (std::size_t k = n - 1; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - level]);
      const Complex want = static_cast<double>(n) * lead[i];
      CHECK(std::abs(dd[n - 1] - want) < 1e-8 * std::max(1.0, std::abs(want)));
      // An extra node must not reveal any higher-degree term.
      const Complex extra(-1.1, 0.4);
      const Complex got = spectrum(derivative(CircFunction::poly(p), scale(extra, Circulant::identity(d))))[i];
      const auto ch = channel_polys(poly_derivative(p));
      CHECK(std::abs(got - ch[i](extra)) < 1e-9 * std::max(1.0, std::abs(got)));
    }
  }
}

TEST_CASE("numeric_derivative") {
  std::mt19937_64 rng(40);
  const Circulant z = testkit::random_circulant(rng, 3);
  const auto sq = CircFunction::poly(CircPoly::monomial(3, 2));
  const Circulant nd = numeric_derivative(sq, z, {Circulant::identity(3), 1e-6});
  CHECK(rel(nd, derivative(sq, z)) < 1e-5);

  const auto konst = CircFunction::poly(CircPoly::constant(testkit::random_circulant(rng, 3)));
  CHECK(approx_equal(numeric_derivative(konst, z, {Circulant::identity(3), 1e-6}), Circulant::zero(3), 0.0));

  // First-order difference: error shrinks linearly with delta for Z^3 at I.
  const auto cube = CircFunction::poly(CircPoly::monomial(2, 3));
  const Circulant exact = derivative(cube, Circulant::identity(2));
  double prev = 0.0;
  for (double delta : {1e-3, 1e-4, 1e-5}) {
    const double err = rel(numeric_derivative(cube, Circulant::identity(2), {Circulant::identity(2), delta}), exact);
    CHECK(err == doctest::Approx(delta).epsilon(0.01));  // 3 delta / |3|
    if (prev > 0.0) CHECK(err < prev);
    prev = err;
  }
  for (double delta : {1e-6, 1e-7, 1e-8}) {
    const double err = rel(numeric_derivative(cube, Circulant::identity(2), {Circulant::identity(2), delta}), exact);
    CHECK(err <= 4.0 * delta);
  }

  CHECK_THROWS_AS(numeric_derivative(sq, z, {Circulant::ones(3), 1e-6}), InvalidIncrement);
  CHECK_THROWS_AS(numeric_derivative(sq, z, {Circulant::identity(3), 0.0}), InvalidIncrement);
}
