#include "circfn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "circfn/error.hpp"
#include "circfn/spectral.hpp"

namespace circfn {

double residual(const CircPoly& p, const Circulant& z) { return frobenius_norm(poly_eval(p, z)); }

namespace {

double residual_scale(const CircPoly& p, const Spectrum& u) {
  double rho = 0.0;
  for (const auto& v : u.values) rho = std::max(rho, std::abs(v));
  double acc = 0.0;
  for (const auto& a : p.coeffs()) acc = acc * rho + frobenius_norm(a);
  return std::max(1.0, acc);
}

// Drops later duplicates; candidates are compared only inside a window on
// Re(x_0), which bounds the max-entry distance from below.
std::vector<std::size_t> dedup(const std::vector<Circulant>& xs, double tol) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ra = xs[a][0].real();
    const double rb = xs[b][0].real();
    return ra != rb ? ra < rb : a < b;
  });
  std::vector<bool> dropped(xs.size(), false);
  for (std::size_t s = 0; s < idx.size(); ++s) {
    for (std::size_t t = s + 1; t < idx.size(); ++t) {
      const std::size_t a = idx[s];
      const std::size_t b = idx[t];
      if (xs[b][0].real() - xs[a][0].real() > tol) break;
      if (dropped[a] || dropped[b]) continue;
      if (max_abs_diff(xs[a], xs[b]) <= tol) dropped[std::max(a, b)] = true;
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!dropped[i]) keep.push_back(i);
  return keep;
}

}  // namespace

SolutionSet solve_circ_poly(const CircPoly& p, const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  if (p.degree() < 1) throw InvalidArgument("polynomial equation needs degree at least 1");

  const std::size_t d = p.order();
  const auto polys = channel_polys(p, opts.zero_tol);

  SolutionSet out;
  bool any_constant = false;
  bool any_zero = false;
  for (const auto& cp : polys) {
    ChannelReport rep;
    rep.channel = cp.channel();
    rep.nominal_degree = cp.degree();
    rep.effective_degree = cp.effective_degree();
    if (cp.is_zero()) {
      rep.kind = ChannelKind::IdenticallyZero;
      any_zero = true;
    } else if (rep.effective_degree == 0) {
      rep.kind = ChannelKind::NonzeroConstant;
      any_constant = true;
    } else {
      rep.kind = ChannelKind::Roots;
      rep.roots = solve_scalar_poly(cp, opts.tol, opts.scalar);
    }
    out.channels.push_back(std::move(rep));
  }

  if (any_constant) {
    out.status = SolutionStatus::NoSolution;
    return out;
  }
  if (any_zero) {
    out.status = SolutionStatus::InfiniteFamily;
    for (const auto& rep : out.channels)
      if (rep.kind == ChannelKind::IdenticallyZero) out.free_channels.push_back(rep.channel);
    return out;
  }

  out.status = SolutionStatus::Finite;
  std::size_t total = 1;
  for (const auto& rep : out.channels) {
    const std::size_t k = rep.roots.roots.size();
    if (total > opts.max_candidates / k) {
      throw RecombinationOverflow("more than " + std::to_string(opts.max_candidates) +
                                  " candidate root combinations");
    }
    total *= k;
  }

  std::vector<Circulant> candidates;
  candidates.reserve(total);
  std::vector<std::size_t> pick(d, 0);
  Spectrum u{std::vector<Complex>(d)};
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t i = 0; i < d; ++i) u[i] = out.channels[i].roots.roots[pick[i]].value;
    candidates.push_back(from_spectrum(u));
    // odometer, last channel fastest
    for (std::size_t i = d; i-- > 0;) {
      if (++pick[i] < out.channels[i].roots.roots.size()) break;
      pick[i] = 0;
    }
  }

  for (std::size_t idx : dedup(candidates, opts.dedup_tol)) {
    const Circulant& r = candidates[idx];
    const Circulant value = poly_eval(p, r);
    const double res = frobenius_norm(value);
    const Spectrum ur = spectrum(r);
    if (!(res <= opts.tol * residual_scale(p, ur))) {
      const Spectrum pv = spectrum(value);
      std::size_t worst = 0;
      for (std::size_t i = 1; i < d; ++i)
        if (std::abs(pv[i]) > std::abs(pv[worst])) worst = i;
      throw SolverFailure("recombined root fails the residual check", worst + 1);
    }
    out.roots.push_back(r);
    out.residuals.push_back(res);
  }
  return out;
}

std::vector<Circulant> sample_family(const SolutionSet& s, std::size_t count, std::mt19937_64& rng,
                                     double radius) {
  if (s.status != SolutionStatus::InfiniteFamily) {
    throw InvalidArgument("sample_family needs an infinite solution family");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t d = s.channels.size();
  std::vector<Circulant> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    Spectrum u{std::vector<Complex>(d)};
    for (std::size_t i = 0; i < d; ++i) {
      const auto& rep = s.channels[i];
      if (rep.kind == ChannelKind::IdenticallyZero) {
        const double r = radius * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        u[i] = std::polar(r, theta);
      } else {
        const auto& roots = rep.roots.roots;
        std::uniform_int_distribution<std::size_t> which(0, roots.size() - 1);
        u[i] = roots[which(rng)].value;
      }
    }
    out.push_back(from_spectrum(u));
  }
  return out;
}

}  // namespace circfn
