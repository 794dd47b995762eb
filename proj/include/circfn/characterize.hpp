#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "circfn/funcalc.hpp"
#include "circfn/spectral.hpp"

namespace circfn {

/// Z -> infinity realized as Z(t) = from_spectrum(t * direction) over an
/// increasing list of scales. Every |direction[i]| is 1, so min_i |u_i| = t.
struct PathSpec {
  Spectrum direction;
  std::vector<double> scales;
  /// Fresh random phases tried per channel after a singularity or a
  /// non-converging estimate.
  std::size_t retry_budget = 5;
  std::uint64_t seed = 0;
  /// One level of Richardson extrapolation under an L + c/t error model.
  bool richardson = true;
  double round_tol = 1e-3;
};

/// t_min, ..., t_max in `points` geometric steps.
std::vector<double> geometric_scales(double t_min, double t_max, std::size_t points);

/// direction[i] = exp(2 pi i phi i) with phi the golden-ratio fraction;
/// scales 10^3 .. 10^8.
PathSpec default_path(std::size_t d, double t_min = 1e3, double t_max = 1e8, std::size_t points = 6,
                      std::uint64_t seed = 0);

/// Channel i: u_i F_i'(u_i) / F_i(u_i), the diagonal of S (Z D[F] F^+) S^{-1}.
/// Throws ChannelSingularity when F_i has a zero or pole at u_i or vanishes
/// identically.
Spectrum logderiv_diag(const CircFunction& f, const Circulant& z);

enum class ChannelState { Converged, NotConverged, Indeterminate };

struct ChannelEstimate {
  std::size_t channel = 0;  // 1-based
  ChannelState state = ChannelState::NotConverged;
  /// Raw estimate at each scale, from the last attempt.
  std::vector<Complex> estimates;
  /// Richardson value (or the last raw estimate when disabled).
  Complex final_estimate = 0.0;
  std::optional<long long> value;  // rounded limit, when converged
  bool in_bounds = true;
  std::size_t retries = 0;
  Complex direction = 1.0;
};

struct DivisorReport {
  bool rational = false;
  std::vector<ChannelEstimate> channels;
  /// Common limit when every channel converged to the same integer.
  std::optional<long long> k;
  std::size_t n = 0;  // degree of P
  std::size_t m = 0;  // degree of Q (0 without a denominator)
  bool p_regular = false;
  bool q_regular = true;
  /// Set when P and Q are both regular: whether the limit is k I with k = n - m.
  std::optional<bool> matches_degree_difference;
  std::vector<double> scales;
};

/// Estimates lim u_i F_i'/F_i along the path. A channel whose estimates never
/// settle on an integer after all retries marks F as not rational.
DivisorReport estimate_divisor(const CircFunction& f, const PathSpec& path);

struct ZeroBoundReport {
  bool matched = false;
  std::optional<long long> n;
  /// n^d, empty when it does not fit in 64 bits.
  std::optional<std::uint64_t> bound;
  /// Set when Qent's channel functions equal G_i': whether n equals the
  /// effective degree of every P_i.
  std::optional<bool> degree_cross_check;
  std::vector<ChannelEstimate> channels;
  std::vector<double> scales;
};

/// Limit of u_i (F_i'/F_i - q_i(u_i)) with q_i the channel functions of Qent.
/// F and Qent must be entire (Poly or ExpPoly).
ZeroBoundReport entire_zero_bound(const CircFunction& f, const CircFunction& qent, const PathSpec& path);

struct DegreeReport {
  std::optional<std::size_t> degree;  // empty: not a regular polynomial
  DivisorReport estimates;
};

DegreeReport detect_poly_degree(const CircFunction& f, const PathSpec& path);

}  // namespace circfn
