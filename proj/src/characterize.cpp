#include "circfn/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "circfn/error.hpp"

namespace circfn {

std::vector<double> geometric_scales(double t_min, double t_max, std::size_t points) {
  if (!(t_min > 0.0) || !(t_max > t_min) || points < 3) {
    throw InvalidArgument("path needs 0 < t_min < t_max and at least 3 points");
  }
  std::vector<double> out(points);
  const double ratio = std::log(t_max / t_min) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) out[k] = t_min * std::exp(ratio * static_cast<double>(k));
  out.back() = t_max;
  return out;
}

PathSpec default_path(std::size_t d, double t_min, double t_max, std::size_t points, std::uint64_t seed) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  PathSpec path;
  path.direction.values.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double frac = std::fmod(phi * static_cast<double>(i), 1.0);
    path.direction[i] = std::polar(1.0, 2.0 * std::numbers::pi * frac);
  }
  path.scales = geometric_scales(t_min, t_max, points);
  path.seed = seed;
  return path;
}

Spectrum logderiv_diag(const CircFunction& f, const Circulant& z) {
  require_same_order(f.numerator().leading(), z);
  const Spectrum u = spectrum(z);
  const auto channels = channel_functions(f);
  Spectrum out{std::vector<Complex>(u.order())};
  for (std::size_t i = 0; i < u.order(); ++i) {
    if (channels[i].indeterminate()) throw ChannelSingularity("channel function vanishes identically", i + 1);
    Complex r;
    if (!channels[i].log_derivative(u[i], r)) throw ChannelSingularity("zero or pole of channel function", i + 1);
    out[i] = u[i] * r;
  }
  return out;
}

namespace {

// Channel probe: writes the quantity whose limit is sought, or returns false
// at a zero/pole.
using Probe = std::function<bool(std::size_t channel, Complex u, Complex& out)>;

void validate(const PathSpec& path, std::size_t d) {
  if (path.direction.order() != d) {
    throw InvalidDimension("path direction has " + std::to_string(path.direction.order()) +
                           " channels, function has " + std::to_string(d));
  }
  for (const auto& v : path.direction.values)
    if (std::abs(std::abs(v) - 1.0) > 1e-9) throw InvalidArgument("path direction entries must have modulus 1");
  if (path.scales.size() < 3) throw InvalidArgument("path needs at least 3 scales");
  for (std::size_t k = 0; k < path.scales.size(); ++k) {
    if (!(path.scales[k] > 0.0)) throw InvalidArgument("path scales must be positive");
    if (k > 0 && !(path.scales[k] > path.scales[k - 1])) throw InvalidArgument("path scales must increase");
  }
  if (!(path.round_tol > 0.0)) throw InvalidArgument("round tolerance must be positive");
}

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Decides convergence of one channel from its estimates.
void settle(ChannelEstimate& ch, const PathSpec& path) {
  const auto& e = ch.estimates;
  const auto& t = path.scales;
  const std::size_t K = e.size();
  ch.final_estimate = e.back();
  if (path.richardson) {
    ch.final_estimate = (t[K - 1] * e[K - 1] - t[K - 2] * e[K - 2]) / (t[K - 1] - t[K - 2]);
  }
  ch.value.reset();
  ch.state = ChannelState::NotConverged;
  if (!finite(ch.final_estimate) || std::abs(ch.final_estimate.real()) > 1e15) return;
  const double k = std::round(ch.final_estimate.real());
  if (std::abs(ch.final_estimate - k) > path.round_tol) return;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t j = K - 3; j < K; ++j) {
    if (!finite(e[j])) return;
    const double err = std::abs(e[j] - k);
    if (err > path.round_tol) return;
    // Error must not grow, up to rounding noise at the largest scales.
    if (err > prev + 1e-12) return;
    prev = err;
  }
  ch.state = ChannelState::Converged;
  ch.value = static_cast<long long>(k);
}

std::vector<ChannelEstimate> run_path(std::size_t d, const PathSpec& path, const std::vector<bool>& indeterminate,
                                      const Probe& probe) {
  validate(path, d);
  std::mt19937_64 rng(path.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<ChannelEstimate> out(d);
  std::vector<bool> pending(d);
  std::vector<bool> singular(d, false);
  Spectrum direction = path.direction;
  for (std::size_t i = 0; i < d; ++i) {
    out[i].channel = i + 1;
    out[i].direction = direction[i];
    if (indeterminate[i]) {
      out[i].state = ChannelState::Indeterminate;
    } else {
      pending[i] = true;
    }
  }

  for (std::size_t attempt = 0;; ++attempt) {
    for (std::size_t i = 0; i < d; ++i) {
      if (!pending[i]) continue;
      out[i].estimates.clear();
      singular[i] = false;
    }
    for (double t : path.scales) {
      Spectrum target{std::vector<Complex>(d)};
      for (std::size_t i = 0; i < d; ++i) target[i] = t * direction[i];
      const Spectrum u = spectrum(from_spectrum(target));
      for (std::size_t i = 0; i < d; ++i) {
        if (!pending[i] || singular[i]) continue;
        Complex v;
        if (!probe(i, u[i], v)) {
          singular[i] = true;
          continue;
        }
        out[i].estimates.push_back(v);
      }
    }
    bool again = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (!pending[i]) continue;
      if (!singular[i]) settle(out[i], path);
      if (!singular[i] && out[i].state == ChannelState::Converged) {
        pending[i] = false;
        continue;
      }
      if (attempt < path.retry_budget) {
        direction[i] = std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));
        out[i].direction = direction[i];
        out[i].retries = attempt + 1;
        again = true;
      } else if (singular[i]) {
        throw ChannelSingularity("zero or pole on every attempted path", i + 1);
      } else {
        pending[i] = false;
      }
    }
    if (!again) break;
  }
  return out;
}

std::size_t degree_of_q(const CircFunction& f) {
  if (const auto* r = std::get_if<CircFunction::Rational>(&f.repr())) return r->q.degree();
  return 0;
}

}  // namespace

DivisorReport estimate_divisor(const CircFunction& f, const PathSpec& path) {
  const std::size_t d = f.order();
  const auto channels = channel_functions(f);
  std::vector<bool> indeterminate(d);
  for (std::size_t i = 0; i < d; ++i) indeterminate[i] = channels[i].indeterminate();

  DivisorReport rep;
  rep.scales = path.scales;
  rep.channels = run_path(d, path, indeterminate, [&](std::size_t i, Complex u, Complex& out) {
    Complex r;
    if (!channels[i].log_derivative(u, r)) return false;
    out = u * r;
    return true;
  });

  rep.n = f.numerator().degree();
  rep.m = degree_of_q(f);
  rep.p_regular = classify(f.numerator()).kind == Regularity::Regular;
  if (const auto* r = std::get_if<CircFunction::Rational>(&f.repr())) {
    rep.q_regular = classify(r->q).kind == Regularity::Regular;
  }

  bool any_determinate = false;
  bool all_converged = true;
  bool uniform = true;
  std::optional<long long> common;
  for (auto& ch : rep.channels) {
    if (ch.state == ChannelState::Indeterminate) {
      uniform = false;
      continue;
    }
    any_determinate = true;
    if (ch.state != ChannelState::Converged) {
      all_converged = false;
      uniform = false;
      continue;
    }
    const long long k = *ch.value;
    ch.in_bounds = k >= -static_cast<long long>(rep.m) && k <= static_cast<long long>(rep.n);
    if (!common) {
      common = k;
    } else if (*common != k) {
      uniform = false;
    }
  }
  rep.rational = any_determinate && all_converged;
  if (rep.rational && uniform) rep.k = common;
  if (rep.p_regular && rep.q_regular) {
    rep.matches_degree_difference =
        rep.k.has_value() && *rep.k == static_cast<long long>(rep.n) - static_cast<long long>(rep.m);
  }
  return rep;
}

ZeroBoundReport entire_zero_bound(const CircFunction& f, const CircFunction& qent, const PathSpec& path) {
  if (f.kind() == FunctionKind::Rational) throw InvalidArgument("zero bound needs an entire function F");
  if (qent.kind() == FunctionKind::Rational) throw InvalidArgument("zero bound needs an entire function Qent");
  require_same_order(f.numerator().leading(), qent.numerator().leading());
  const std::size_t d = f.order();
  const auto fc = channel_functions(f);
  const auto qc = channel_functions(qent);
  std::vector<bool> indeterminate(d);
  for (std::size_t i = 0; i < d; ++i) indeterminate[i] = fc[i].indeterminate();

  ZeroBoundReport rep;
  rep.scales = path.scales;
  rep.channels = run_path(d, path, indeterminate, [&](std::size_t i, Complex u, Complex& out) {
    Complex r;
    if (!fc[i].log_derivative(u, r)) return false;
    out = u * (r - qc[i].value(u));
    return true;
  });

  std::optional<long long> common;
  bool matched = true;
  for (const auto& ch : rep.channels) {
    if (ch.state != ChannelState::Converged || *ch.value < 0 || (common && *common != *ch.value)) {
      matched = false;
      break;
    }
    common = ch.value;
  }
  if (!matched || !common) return rep;
  rep.matched = true;
  rep.n = common;

  std::uint64_t bound = 1;
  bool fits = true;
  for (std::size_t i = 0; i < d && fits; ++i) {
    const auto n = static_cast<std::uint64_t>(*common);
    if (n != 0 && bound > std::numeric_limits<std::uint64_t>::max() / n) {
      fits = false;
    } else {
      bound *= n;
    }
  }
  if (fits) rep.bound = bound;

  // Witness check: Qent = G' (G = 0 for a bare polynomial) means the limit
  // counts the zeros of P channel by channel.
  if (qent.kind() == FunctionKind::Poly) {
    const CircPoly gprime = [&] {
      if (const auto* e = std::get_if<CircFunction::ExpPoly>(&f.repr())) return poly_derivative(e->g);
      return CircPoly::constant(Circulant::zero(d));
    }();
    const auto gp = channel_polys(gprime);
    bool same = true;
    for (std::size_t i = 0; i < d && same; ++i) {
      const ScalarPoly a = gp[i].trimmed();
      const ScalarPoly b = qc[i].p().trimmed();
      const double s = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
      if (a.effective_degree() != b.effective_degree()) {
        same = false;
        break;
      }
      for (std::size_t k = 0; k < a.coeffs().size(); ++k)
        if (std::abs(a.coeffs()[k] - b.coeffs()[k]) > 1e-9 * s) same = false;
    }
    if (same) {
      bool ok = true;
      for (const auto& c : fc) ok = ok && static_cast<long long>(c.p().effective_degree()) == *common;
      rep.degree_cross_check = ok;
    }
  }
  return rep;
}

DegreeReport detect_poly_degree(const CircFunction& f, const PathSpec& path) {
  DegreeReport rep;
  rep.estimates = estimate_divisor(f, path);
  const auto& est = rep.estimates;
  const bool all_defined = std::all_of(est.channels.begin(), est.channels.end(), [](const ChannelEstimate& c) {
    return c.state == ChannelState::Converged;
  });
  if (all_defined && est.k && *est.k >= 0) rep.degree = static_cast<std::size_t>(*est.k);
  return rep;
}

}  // namespace circfn
