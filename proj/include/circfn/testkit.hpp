#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "circfn/circulant.hpp"
#include "circfn/funcalc.hpp"

// Oracles that check the fast paths through dense linear algebra. Nothing
// here calls spectrum(), mul() or the solver.
namespace circfn::testkit {

DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix dense_add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix dense_sub(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix dense_adjoint(const DenseMatrix& a);
double dense_frobenius(const DenseMatrix& a);

/// Dense circulant expansion written out independently of to_dense().
DenseMatrix dense_circulant(const Circulant& x);

/// Explicit S and S^{-1} = conj(S)/d from direct cos/sin.
DenseMatrix dense_fourier(std::size_t d);
DenseMatrix dense_fourier_inverse(std::size_t d);

/// S to_dense(X) S^{-1}.
DenseMatrix dense_conjugate(const Circulant& x);
DenseMatrix dense_conjugate(const DenseMatrix& x);

/// Largest off-diagonal modulus.
double off_diagonal_max(const DenseMatrix& a);

/// Dense Horner evaluation of a circulant polynomial.
DenseMatrix dense_poly_eval(const CircPoly& p, const DenseMatrix& z);

struct PenroseReport {
  double axa = 0.0;  // ||A X A - A||
  double xax = 0.0;  // ||X A X - X||
  double ax_hermitian = 0.0;  // ||(A X)^* - A X||
  double xa_hermitian = 0.0;  // ||(X A)^* - X A||
  double max_deviation = 0.0;
};

PenroseReport penrose_check(const Circulant& a, const Circulant& x);

/// Lattice for brute_force_roots at d = 2: each of the four real coordinates
/// of (u_1, u_2) runs over `steps` points in [-radius, radius].
struct GridSpec {
  double radius = 4.0;
  std::size_t steps = 33;
  /// Points with residual at or below this join a cluster.
  double accept = 1.0;
  /// Compass-search refinement stops once the step drops below this.
  double refine_step = 1e-15;
};

/// Scans the lattice through the dense residual, clusters accepted points,
/// refines each cluster by compass search and returns the roots. d = 2 only.
std::vector<Circulant> brute_force_roots(const CircPoly& p, const GridSpec& grid = {});

/// Central-difference directional derivative of each entry of F along the
/// direction, contracted with the dense inverse of the direction.
Circulant finite_difference_derivative(const CircFunction& f, const Circulant& z, const Circulant& direction,
                                       double h);

// Seeded generators.
Complex random_complex(std::mt19937_64& rng, double scale = 1.0);
Circulant random_circulant(std::mt19937_64& rng, std::size_t d, double scale = 1.0);
Circulant random_integer_circulant(std::mt19937_64& rng, std::size_t d, int lo, int hi);
CircPoly random_poly(std::mt19937_64& rng, std::size_t d, std::size_t n);

}  // namespace circfn::testkit
