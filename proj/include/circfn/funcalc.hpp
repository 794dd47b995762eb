#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "circfn/circulant.hpp"
#include "circfn/spectral.hpp"

namespace circfn {

/// Coefficients below this fraction of a polynomial's largest spectral
/// coefficient magnitude are treated as exact zeros per channel.
inline constexpr double kCoefficientZeroTol = 1e-10;

/// Scalar polynomial c_0 u^n + ... + c_n, leading coefficient first.
/// `channel` is the 1-based eigenchannel it came from, or 0.
class ScalarPoly {
 public:
  ScalarPoly() = default;
  explicit ScalarPoly(std::vector<Complex> coeffs, std::size_t channel = 0);

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::size_t channel() const noexcept { return channel_; }

  /// Nominal degree, coeffs().size() - 1.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  /// Degree after skipping exactly-zero leading coefficients; 0 for constants.
  std::size_t effective_degree() const noexcept;
  bool is_zero() const noexcept;
  /// Nonzero and of effective degree 0.
  bool is_nonzero_constant() const noexcept { return !is_zero() && effective_degree() == 0; }

  /// Copy without the exactly-zero leading coefficients.
  ScalarPoly trimmed() const;
  ScalarPoly derivative() const;

  Complex operator()(Complex u) const noexcept;
  /// p(u) and p'(u) in one Horner pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex u) const noexcept;
  /// sum_k |c_k| |u|^{n-k}; the natural scale for |p(u)|.
  double magnitude(double abs_u) const noexcept;
  double max_abs_coeff() const noexcept;

 private:
  std::vector<Complex> coeffs_;
  std::size_t channel_ = 0;
};

/// P(Z) = A_0 Z^n + A_1 Z^{n-1} + ... + A_n over the circulant ring.
class CircPoly {
 public:
  /// Throws InvalidArgument on an empty list, InvalidDimension on mixed orders.
  explicit CircPoly(std::vector<Circulant> coeffs);

  static CircPoly constant(const Circulant& a);
  /// Z^n.
  static CircPoly monomial(std::size_t d, std::size_t n);

  std::size_t order() const noexcept { return coeffs_.front().order(); }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const std::vector<Circulant>& coeffs() const noexcept { return coeffs_; }
  const Circulant& operator[](std::size_t k) const { return coeffs_[k]; }
  const Circulant& leading() const { return coeffs_.front(); }

 private:
  std::vector<Circulant> coeffs_;
};

CircPoly poly_add(const CircPoly& p, const CircPoly& q);
CircPoly poly_mul(const CircPoly& p, const CircPoly& q);
/// Formal derivative: coefficients (n - k) A_k, k < n. Constant -> zero constant.
CircPoly poly_derivative(const CircPoly& p);

/// Horner evaluation in the ring.
Circulant poly_eval(const CircPoly& p, const Circulant& z);

/// Channel i carries coefficients spectrum(A_k)[i], k = 0..n. Coefficients
/// with magnitude <= zero_tol * (largest spectral coefficient magnitude of P)
/// are flushed to exact zero so vanishing channels stay exactly degenerate.
std::vector<ScalarPoly> channel_polys(const CircPoly& p, double zero_tol = kCoefficientZeroTol);

enum class Regularity { Regular, Singular };

struct Classification {
  Regularity kind = Regularity::Regular;
  /// 1-based channels where the leading coefficient vanishes.
  std::vector<std::size_t> vanishing_channels;
};

/// Regular iff spectrum(A_0) has no channel at or below rel_tol times the
/// largest spectral magnitude over all coefficients.
Classification classify(const CircPoly& p, double rel_tol = kCoefficientZeroTol);

enum class FunctionKind { Poly, Rational, ExpPoly };

/// Tagged union over the implemented function classes.
///   Poly:     Z -> P(Z)
///   Rational: Z -> P(Z) Q(Z)^+          (Q has an invertible coefficient)
///   ExpPoly:  Z -> P(Z) exp(G(Z))       (exp applied per channel)
class CircFunction {
 public:
  struct Poly {
    CircPoly p;
  };
  struct Rational {
    CircPoly p;
    CircPoly q;
  };
  struct ExpPoly {
    CircPoly p;
    CircPoly g;
  };

  static CircFunction poly(CircPoly p);
  /// Throws InvalidArgument if no coefficient of Q is invertible.
  static CircFunction rational(CircPoly p, CircPoly q);
  static CircFunction exppoly(CircPoly p, CircPoly g);

  FunctionKind kind() const noexcept { return static_cast<FunctionKind>(repr_.index()); }
  std::size_t order() const noexcept;
  /// P for every kind.
  const CircPoly& numerator() const noexcept;
  const std::variant<Poly, Rational, ExpPoly>& repr() const noexcept { return repr_; }

 private:
  explicit CircFunction(std::variant<Poly, Rational, ExpPoly> r) : repr_(std::move(r)) {}
  std::variant<Poly, Rational, ExpPoly> repr_;
};

/// Scalar function F_i that appears on channel i of S F(Z) S^{-1}.
class ChannelFunction {
 public:
  ChannelFunction(FunctionKind kind, ScalarPoly p, ScalarPoly aux);

  FunctionKind kind() const noexcept { return kind_; }
  const ScalarPoly& p() const noexcept { return p_; }
  /// Q_i for Rational, G_i for ExpPoly, empty for Poly.
  const ScalarPoly& aux() const noexcept { return aux_; }

  /// F_i vanishes identically (or Q_i does), so F_i'/F_i is undefined everywhere.
  bool indeterminate() const noexcept;

  Complex value(Complex u) const;
  Complex derivative(Complex u) const;

  /// F_i'(u)/F_i(u), formed from the factors' log-derivatives so the
  /// exponential never has to be evaluated. Returns false when P_i(u) or
  /// Q_i(u) falls below rel_tol times its magnitude scale.
  bool log_derivative(Complex u, Complex& out, double rel_tol = 1e-13) const;

 private:
  FunctionKind kind_;
  ScalarPoly p_;
  ScalarPoly aux_;
};

std::vector<ChannelFunction> channel_functions(const CircFunction& f,
                                               double zero_tol = kCoefficientZeroTol);

struct EvalResult {
  Circulant value;
  /// Rational only: 1-based channels where Q(Z) was zeroed by the pseudoinverse.
  std::vector<std::size_t> flagged_channels;
};

EvalResult func_eval(const CircFunction& f, const Circulant& z, double pinv_tol = -1.0);

/// Spectral derivative: channel i of the result is F_i'(u_i). Throws PoleError
/// for a rational channel with Q_i(u_i) at or below the pseudoinverse threshold.
Circulant derivative(const CircFunction& f, const Circulant& z, double pinv_tol = -1.0);

struct IncrementSpec {
  Circulant direction;
  double delta;
};

/// Difference quotient (F(Z + dZ) - F(Z)) dZ^+ with dZ = delta * direction.
/// Throws InvalidIncrement when the direction is not invertible or delta <= 0.
Circulant numeric_derivative(const CircFunction& f, const Circulant& z, const IncrementSpec& inc);

}  // namespace circfn
