#include "circfn/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circfn/error.hpp"

namespace circfn {

CircPoly::CircPoly(std::vector<Circulant> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
  for (const auto& c : coeffs_) require_same_order(coeffs_.front(), c);
}

CircPoly CircPoly::constant(const Circulant& a) { return CircPoly({a}); }

CircPoly CircPoly::monomial(std::size_t d, std::size_t n) {
  std::vector<Circulant> c(n + 1, Circulant::zero(d));
  c.front() = Circulant::identity(d);
  return CircPoly(std::move(c));
}

CircPoly poly_add(const CircPoly& p, const CircPoly& q) {
  require_same_order(p.leading(), q.leading());
  const std::size_t n = std::max(p.degree(), q.degree());
  std::vector<Circulant> out(n + 1, Circulant::zero(p.order()));
  for (std::size_t k = 0; k <= p.degree(); ++k) out[n - p.degree() + k] = out[n - p.degree() + k] + p[k];
  for (std::size_t k = 0; k <= q.degree(); ++k) out[n - q.degree() + k] = out[n - q.degree() + k] + q[k];
  return CircPoly(std::move(out));
}

CircPoly poly_mul(const CircPoly& p, const CircPoly& q) {
  require_same_order(p.leading(), q.leading());
  std::vector<Circulant> out(p.degree() + q.degree() + 1, Circulant::zero(p.order()));
  for (std::size_t a = 0; a <= p.degree(); ++a)
    for (std::size_t b = 0; b <= q.degree(); ++b) out[a + b] = out[a + b] + p[a] * q[b];
  return CircPoly(std::move(out));
}

CircPoly poly_derivative(const CircPoly& p) {
  const std::size_t n = p.degree();
  if (n == 0) return CircPoly::constant(Circulant::zero(p.order()));
  std::vector<Circulant> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(scale(static_cast<double>(n - k), p[k]));
  return CircPoly(std::move(out));
}

Circulant poly_eval(const CircPoly& p, const Circulant& z) {
  require_same_order(p.leading(), z);
  Circulant acc = p[0];
  for (std::size_t k = 1; k <= p.degree(); ++k) acc = mul(acc, z) + p[k];
  return acc;
}

std::vector<ScalarPoly> channel_polys(const CircPoly& p, double zero_tol) {
  const std::size_t d = p.order();
  std::vector<Spectrum> spectra;
  spectra.reserve(p.degree() + 1);
  double peak = 0.0;
  for (const auto& a : p.coeffs()) {
    spectra.push_back(spectrum(a));
    for (const auto& v : spectra.back().values) peak = std::max(peak, std::abs(v));
  }
  const double cut = zero_tol * peak;
  std::vector<ScalarPoly> out;
  out.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Complex> c(spectra.size());
    for (std::size_t k = 0; k < spectra.size(); ++k) {
      const Complex v = spectra[k][i];
      c[k] = (zero_tol > 0.0 && std::abs(v) <= cut) ? Complex(0.0) : v;
    }
    out.emplace_back(std::move(c), i + 1);
  }
  return out;
}

Classification classify(const CircPoly& p, double rel_tol) {
  double peak = 0.0;
  for (const auto& a : p.coeffs())
    for (const auto& v : spectrum(a).values) peak = std::max(peak, std::abs(v));
  const Spectrum lead = spectrum(p.leading());
  Classification out;
  for (std::size_t i = 0; i < lead.order(); ++i)
    if (!(std::abs(lead[i]) > rel_tol * peak)) out.vanishing_channels.push_back(i + 1);
  out.kind = out.vanishing_channels.empty() ? Regularity::Regular : Regularity::Singular;
  return out;
}

CircFunction CircFunction::poly(CircPoly p) { return CircFunction(Poly{std::move(p)}); }

CircFunction CircFunction::rational(CircPoly p, CircPoly q) {
  require_same_order(p.leading(), q.leading());
  const bool ok = std::any_of(q.coeffs().begin(), q.coeffs().end(),
                              [](const Circulant& b) { return is_invertible(b); });
  if (!ok) throw InvalidArgument("rational denominator needs at least one invertible coefficient");
  return CircFunction(Rational{std::move(p), std::move(q)});
}

CircFunction CircFunction::exppoly(CircPoly p, CircPoly g) {
  require_same_order(p.leading(), g.leading());
  return CircFunction(ExpPoly{std::move(p), std::move(g)});
}

const CircPoly& CircFunction::numerator() const noexcept {
  return std::visit([](const auto& f) -> const CircPoly& { return f.p; }, repr_);
}

std::size_t CircFunction::order() const noexcept { return numerator().order(); }

ChannelFunction::ChannelFunction(FunctionKind kind, ScalarPoly p, ScalarPoly aux)
    : kind_(kind), p_(std::move(p)), aux_(std::move(aux)) {}

bool ChannelFunction::indeterminate() const noexcept {
  return p_.is_zero() || (kind_ == FunctionKind::Rational && aux_.is_zero());
}

Complex ChannelFunction::value(Complex u) const {
  switch (kind_) {
    case FunctionKind::Poly:
      return p_(u);
    case FunctionKind::Rational: {
      const Complex q = aux_(u);
      return q == Complex(0.0) ? Complex(0.0) : p_(u) / q;
    }
    case FunctionKind::ExpPoly:
      return p_(u) * std::exp(aux_(u));
  }
  return 0.0;
}

Complex ChannelFunction::derivative(Complex u) const {
  const auto [pv, dp] = p_.eval_with_derivative(u);
  switch (kind_) {
    case FunctionKind::Poly:
      return dp;
    case FunctionKind::Rational: {
      const auto [qv, dq] = aux_.eval_with_derivative(u);
      return (dp * qv - dq * pv) / (qv * qv);
    }
    case FunctionKind::ExpPoly: {
      const auto [gv, dg] = aux_.eval_with_derivative(u);
      return (dp + pv * dg) * std::exp(gv);
    }
  }
  return 0.0;
}

bool ChannelFunction::log_derivative(Complex u, Complex& out, double rel_tol) const {
  const double au = std::abs(u);
  const auto [pv, dp] = p_.eval_with_derivative(u);
  if (!(std::abs(pv) > rel_tol * p_.magnitude(au))) return false;
  Complex r = dp / pv;
  if (kind_ == FunctionKind::Rational) {
    const auto [qv, dq] = aux_.eval_with_derivative(u);
    if (!(std::abs(qv) > rel_tol * aux_.magnitude(au))) return false;
    r -= dq / qv;
  } else if (kind_ == FunctionKind::ExpPoly) {
    r += aux_.derivative()(u);
  }
  out = r;
  return std::isfinite(r.real()) && std::isfinite(r.imag());
}

std::vector<ChannelFunction> channel_functions(const CircFunction& f, double zero_tol) {
  const std::size_t d = f.order();
  std::vector<ChannelFunction> out;
  out.reserve(d);
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        const auto ps = channel_polys(g.p, zero_tol);
        if constexpr (std::is_same_v<T, CircFunction::Poly>) {
          for (std::size_t i = 0; i < d; ++i) out.emplace_back(FunctionKind::Poly, ps[i], ScalarPoly({}, i + 1));
        } else if constexpr (std::is_same_v<T, CircFunction::Rational>) {
          const auto qs = channel_polys(g.q, zero_tol);
          for (std::size_t i = 0; i < d; ++i) out.emplace_back(FunctionKind::Rational, ps[i], qs[i]);
        } else {
          const auto gs = channel_polys(g.g, zero_tol);
          for (std::size_t i = 0; i < d; ++i) out.emplace_back(FunctionKind::ExpPoly, ps[i], gs[i]);
        }
      },
      f.repr());
  return out;
}

EvalResult func_eval(const CircFunction& f, const Circulant& z, double pinv_tol) {
  require_same_order(f.numerator().leading(), z);
  return std::visit(
      [&](const auto& g) -> EvalResult {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, CircFunction::Poly>) {
          return {poly_eval(g.p, z), {}};
        } else if constexpr (std::is_same_v<T, CircFunction::Rational>) {
          const Circulant qz = poly_eval(g.q, z);
          const double tol = pinv_tol < 0.0 ? default_pinv_tol(z.order()) : pinv_tol;
          std::vector<std::size_t> flagged = null_channels(spectrum(qz), tol);
          for (auto& c : flagged) ++c;
          return {mul(poly_eval(g.p, z), pseudoinverse(qz, tol)), std::move(flagged)};
        } else {
          const Spectrum pv = spectrum(poly_eval(g.p, z));
          const Spectrum gv = spectrum(poly_eval(g.g, z));
          Spectrum out{std::vector<Complex>(z.order())};
          for (std::size_t i = 0; i < z.order(); ++i) out[i] = pv[i] * std::exp(gv[i]);
          return {from_spectrum(out), {}};
        }
      },
      f.repr());
}

Circulant derivative(const CircFunction& f, const Circulant& z, double pinv_tol) {
  require_same_order(f.numerator().leading(), z);
  const Spectrum u = spectrum(z);
  const auto channels = channel_functions(f, 0.0);
  const std::size_t d = z.order();
  if (f.kind() == FunctionKind::Rational) {
    std::vector<Complex> qv(d);
    double peak = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      qv[i] = channels[i].aux()(u[i]);
      peak = std::max(peak, std::abs(qv[i]));
    }
    const double tol = pinv_tol < 0.0 ? default_pinv_tol(d) : pinv_tol;
    for (std::size_t i = 0; i < d; ++i)
      if (!(std::abs(qv[i]) > tol * peak)) throw PoleError("rational function has a pole at Z", i + 1);
  }
  Spectrum out{std::vector<Complex>(d)};
  for (std::size_t i = 0; i < d; ++i) out[i] = channels[i].derivative(u[i]);
  return from_spectrum(out);
}

Circulant numeric_derivative(const CircFunction& f, const Circulant& z, const IncrementSpec& inc) {
  require_same_order(inc.direction, z);
  if (!(inc.delta > 0.0) || !std::isfinite(inc.delta))
    throw InvalidIncrement("increment step must be a positive finite number");
  if (!is_invertible(inc.direction)) throw InvalidIncrement("increment direction is not invertible");
  const Circulant dz = scale(inc.delta, inc.direction);
  const Circulant df = func_eval(f, z + dz).value - func_eval(f, z).value;
  return mul(df, pseudoinverse(dz));
}

}  // namespace circfn
