#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "circfn/error.hpp"
#include "circfn/solver.hpp"

namespace circfn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double relative_residual(const ScalarPoly& p, Complex r) {
  const double scale = p.magnitude(std::abs(r));
  return scale > 0.0 ? std::abs(p(r)) / scale : 0.0;
}

// Aberth-Ehrlich with Gauss-Seidel updates. Returns true when every root
// reached its stopping criterion within the iteration budget.
bool aberth(const ScalarPoly& p, std::vector<Complex>& z, std::size_t max_iter, std::size_t& iters) {
  const std::size_t n = p.effective_degree();
  const auto& c = p.coeffs();
  const double radius = std::pow(std::abs(c.back() / c.front()), 1.0 / static_cast<double>(n));
  z.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }
  std::vector<bool> done(n, false);
  for (iters = 0; iters < max_iter; ++iters) {
    std::size_t remaining = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const auto [pv, dp] = p.eval_with_derivative(z[k]);
      if (std::abs(pv) <= 8.0 * kEps * p.magnitude(std::abs(z[k]))) {
        done[k] = true;
        continue;
      }
      Complex sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      Complex w;
      if (dp == Complex(0.0)) {
        w = Complex(std::max(std::abs(z[k]), 1.0) * 1e-3, 0.0);
      } else {
        const Complex ratio = pv / dp;
        w = ratio / (1.0 - ratio * sum);
      }
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        w = Complex(std::max(std::abs(z[k]), 1.0) * 1e-3, 0.0);
      }
      z[k] -= w;
      if (std::abs(w) <= 4.0 * kEps * std::abs(z[k])) {
        done[k] = true;
      } else {
        ++remaining;
      }
    }
    if (remaining == 0) return true;
  }
  return false;
}

std::vector<Complex> companion_roots(const ScalarPoly& p) {
  const std::size_t n = p.effective_degree();
  const auto& c = p.coeffs();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) m(0, static_cast<Eigen::Index>(k)) = -c[k + 1] / c[0];
  for (std::size_t k = 1; k < n; ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = solver.eigenvalues()[static_cast<Eigen::Index>(k)];
  return out;
}

bool all_within(const ScalarPoly& p, const std::vector<Complex>& z, double tol) {
  return std::all_of(z.begin(), z.end(), [&](Complex r) { return relative_residual(p, r) <= tol; });
}

// A group of m computed roots is a numerical m-fold root when p and its first
// m-1 derivatives are all at the rounding floor expected for that multiplicity.
bool is_multiple_root(const ScalarPoly& p, Complex mu, std::size_t m) {
  ScalarPoly q = p;
  for (std::size_t j = 0; j < m; ++j) {
    if (j > 0) q = q.derivative();
    const double floor = 64.0 * std::pow(kEps, static_cast<double>(m - j) / static_cast<double>(m));
    if (relative_residual(q, mu) > floor) return false;
  }
  return true;
}

// An m-fold root of p is a simple root of its (m-1)th derivative.
Complex refine_multiple_root(const ScalarPoly& p, Complex mu, std::size_t m) {
  ScalarPoly q = p;
  for (std::size_t j = 1; j < m; ++j) q = q.derivative();
  for (int it = 0; it < 4; ++it) {
    const auto [qv, dq] = q.eval_with_derivative(mu);
    if (dq == Complex(0.0)) break;
    const Complex next = mu - qv / dq;
    if (!(relative_residual(p, next) <= relative_residual(p, mu))) break;
    mu = next;
  }
  return mu;
}

std::vector<RootCluster> cluster(const ScalarPoly& p, const std::vector<Complex>& z, double cluster_tol) {
  const std::size_t n = z.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double s = std::max({1.0, std::abs(z[a]), std::abs(z[b])});
      if (std::abs(z[a] - z[b]) <= cluster_tol * s) parent[find(a)] = find(b);
    }
  std::vector<RootCluster> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t r = find(a);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.push_back({Complex(0.0), 0});
    }
    out[slot[r]].value += z[a];
    out[slot[r]].multiplicity += 1;
  }
  for (auto& c : out) c.value /= static_cast<double>(c.multiplicity);

  // Multiple roots are only resolved to about eps^(1/m), which can exceed
  // cluster_tol; merge nearby clusters that pass the derivative test.
  constexpr double kMergeRadius = 1e-2;
  {
    const std::size_t k = out.size();
    std::vector<std::size_t> group(k);
    std::iota(group.begin(), group.end(), std::size_t{0});
    auto root_of = [&](std::size_t a) {
      while (group[a] != a) a = group[a] = group[group[a]];
      return a;
    };
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        const double s = std::max({1.0, std::abs(out[a].value), std::abs(out[b].value)});
        if (std::abs(out[a].value - out[b].value) <= kMergeRadius * s) group[root_of(a)] = root_of(b);
      }
    std::vector<RootCluster> sums(k, {Complex(0.0), 0});
    std::vector<std::size_t> members(k, 0);
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t g = root_of(a);
      sums[g].value += out[a].value * static_cast<double>(out[a].multiplicity);
      sums[g].multiplicity += out[a].multiplicity;
      ++members[g];
    }
    std::vector<RootCluster> next;
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t g = root_of(a);
      if (members[g] < 2) {
        next.push_back(out[a]);
        continue;
      }
      const std::size_t m = sums[g].multiplicity;
      const Complex mu = sums[g].value / static_cast<double>(m);
      if (!is_multiple_root(p, mu, m)) {
        next.push_back(out[a]);
      } else if (a == g) {
        next.push_back({refine_multiple_root(p, mu, m), m});
      }
    }
    out = std::move(next);
  }
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t a = 0; a < out.size() && !merged; ++a)
      for (std::size_t b = a + 1; b < out.size() && !merged; ++b) {
        const double s = std::max({1.0, std::abs(out[a].value), std::abs(out[b].value)});
        if (std::abs(out[a].value - out[b].value) > kMergeRadius * s) continue;
        const std::size_t m = out[a].multiplicity + out[b].multiplicity;
        const Complex mu = (out[a].value * static_cast<double>(out[a].multiplicity) +
                            out[b].value * static_cast<double>(out[b].multiplicity)) /
                           static_cast<double>(m);
        if (!is_multiple_root(p, mu, m)) continue;
        out[a] = {refine_multiple_root(p, mu, m), m};
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(b));
        merged = true;
      }
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace

std::size_t ScalarRoots::count_with_multiplicity() const noexcept {
  std::size_t n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

void polish_roots(const ScalarPoly& p, std::vector<Complex>& roots) {
  for (auto& r : roots) {
    const auto [pv, dp] = p.eval_with_derivative(r);
    if (std::abs(pv) <= 1e-12 * p.magnitude(std::abs(r))) continue;
    if (dp == Complex(0.0)) continue;
    const Complex next = r - pv / dp;
    if (std::abs(p(next)) < std::abs(pv)) r = next;
  }
}

ScalarRoots solve_scalar_poly(const ScalarPoly& poly, double tol, const ScalarSolveOptions& opts) {
  if (!(tol > 0.0)) throw InvalidArgument("root tolerance must be positive");
  if (poly.is_zero()) throw DegeneratePolynomial("cannot find roots of the zero polynomial");
  const ScalarPoly p = poly.trimmed();
  const std::size_t n = p.effective_degree();
  if (n == 0) throw DegeneratePolynomial("cannot find roots of a nonzero constant");

  // Factor out u^zeros from exactly-zero trailing coefficients.
  std::size_t zeros = 0;
  while (zeros < n && p.coeffs()[n - zeros] == Complex(0.0)) ++zeros;
  const ScalarPoly core(std::vector<Complex>(p.coeffs().begin(), p.coeffs().end() - static_cast<std::ptrdiff_t>(zeros)),
                        p.channel());

  ScalarRoots out;
  std::vector<Complex> z;
  if (core.effective_degree() == 1) {
    z = {-core.coeffs()[1] / core.coeffs()[0]};
  } else if (core.effective_degree() > 1) {
    const bool converged = aberth(core, z, opts.max_iterations, out.iterations);
    polish_roots(core, z);
    if (!converged && !all_within(core, z, tol)) {
      z = companion_roots(core);
      polish_roots(core, z);
      out.used_companion_fallback = true;
    }
  }
  if (!all_within(core, z, tol)) {
    throw SolverFailure("root finder did not reach the residual tolerance", p.channel());
  }
  z.insert(z.end(), zeros, Complex(0.0));
  out.roots = cluster(p, z, opts.cluster_tol);
  for (const auto& r : out.roots) out.max_residual = std::max(out.max_residual, relative_residual(p, r.value));
  return out;
}

}  // namespace circfn
