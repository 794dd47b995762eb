#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "circfn/circulant.hpp"
#include "circfn/funcalc.hpp"

namespace circfn {

struct RootCluster {
  Complex value;
  std::size_t multiplicity = 1;
};

/// Roots of one scalar polynomial, with multiplicities summing to its
/// effective degree.
struct ScalarRoots {
  std::vector<RootCluster> roots;
  std::size_t iterations = 0;
  /// max_k |p(r_k)| / magnitude(|r_k|) over the distinct roots.
  double max_residual = 0.0;
  bool used_companion_fallback = false;

  std::size_t count_with_multiplicity() const noexcept;
};

struct ScalarSolveOptions {
  std::size_t max_iterations = 500;
  /// Clusters are merged when closer than cluster_tol * max(1, |root|).
  double cluster_tol = 1e-7;
};

/// All roots of the trimmed polynomial by Aberth-Ehrlich iteration, falling
/// back to the eigenvalues of the companion matrix if the iteration stalls.
/// Each reported root satisfies |p(r)| <= tol * magnitude(|r|).
/// Throws DegeneratePolynomial for constant input and SolverFailure when
/// neither route meets tol.
ScalarRoots solve_scalar_poly(const ScalarPoly& p, double tol = 1e-10, const ScalarSolveOptions& opts = {});

/// One Newton step per root, kept only when it lowers |p(r)|. Roots already
/// at or below 1e-12 * magnitude(|r|) are left untouched.
void polish_roots(const ScalarPoly& p, std::vector<Complex>& roots);

enum class SolutionStatus { Finite, NoSolution, InfiniteFamily };

enum class ChannelKind { Roots, IdenticallyZero, NonzeroConstant };

struct ChannelReport {
  std::size_t channel = 0;  // 1-based
  ChannelKind kind = ChannelKind::Roots;
  std::size_t nominal_degree = 0;
  std::size_t effective_degree = 0;
  ScalarRoots roots;  // only for ChannelKind::Roots
};

struct SolutionSet {
  SolutionStatus status = SolutionStatus::Finite;
  /// Finite only; lexicographic in (channel 1 root index, channel 2 root index, ...).
  std::vector<Circulant> roots;
  std::vector<double> residuals;
  std::vector<ChannelReport> channels;
  /// InfiniteFamily only; 1-based channels whose eigenvalue is a free parameter.
  std::vector<std::size_t> free_channels;
};

struct SolveOptions {
  /// Residual tolerance; roots must satisfy
  /// residual(P, R) <= tol * max(1, sum_k ||A_k||_F rho(R)^{n-k}).
  double tol = 1e-8;
  std::size_t max_candidates = 1'000'000;
  /// Final roots closer than this in max-entry distance are merged.
  double dedup_tol = 1e-8;
  double zero_tol = kCoefficientZeroTol;
  ScalarSolveOptions scalar;
};

/// Solves P(Z) = O channel by channel. Throws InvalidArgument for degree 0
/// or tol <= 0, RecombinationOverflow past max_candidates, SolverFailure when
/// a channel or a recombined root fails verification.
SolutionSet solve_circ_poly(const CircPoly& p, const SolveOptions& opts = {});

/// frobenius_norm(poly_eval(P, Z)).
double residual(const CircPoly& p, const Circulant& z);

/// Concrete members of an InfiniteFamily: fixed channels take one of their
/// roots, free channels a value with modulus at most `radius`.
std::vector<Circulant> sample_family(const SolutionSet& s, std::size_t count, std::mt19937_64& rng,
                                     double radius = 2.0);

}  // namespace circfn
