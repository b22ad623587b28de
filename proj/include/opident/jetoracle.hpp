#pragma once

// Numeric cross-check of the symbolic identities: truncated Taylor series
// (jets) with complex coefficients at a base point, built from closed-form
// derivatives of a few concrete functions.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace opident {

using Complex = std::complex<double>;

/// c_0..c_N, Taylor coefficients at base_point.
class Jet {
 public:
  Jet(Complex base_point, std::vector<Complex> coefficients);
  static Jet constant(Complex base_point, Complex value, std::size_t order);

  Complex base_point() const { return base_; }
  std::size_t order() const { return c_.size() - 1; }
  std::span<const Complex> coefficients() const { return c_; }
  Complex value() const { return c_.front(); }

  /// Drops coefficients above new_order.
  Jet truncated(std::size_t new_order) const;
  /// c_k <- (k+1) c_(k+1); order N -> N-1. Order-0 input throws.
  Jet derivative() const;

  // Binary operations truncate to the lower of the two orders.
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Complex s, const Jet& a);

 private:
  Complex base_;
  std::vector<Complex> c_;
};

enum class FunctionId { Sin, Cos, ExpA, Linear, GaussianHalf, CubeRootMix };

/// A function with closed-form derivatives, the lambda its equation uses,
/// and the order r of that equation (D^r u = lambda^r u, or D^2 u = 0).
struct ConcreteFunction {
  FunctionId id;
  Complex a{1.0, 0.0};  // EXP_A rate
  Complex lambda_value{0.0, 0.0};
  unsigned equation_order = 1;

  /// sin x with lambda = i, D^2 u = -u.
  static ConcreteFunction sin();
  static ConcreteFunction cos();
  /// e^(a x) with lambda = a, Du = a u.
  static ConcreteFunction exp_a(Complex a);
  /// e^(a x) viewed as a solution of Du = -lambda u, i.e. lambda = -a.
  static ConcreteFunction exp_a_reversed(Complex a);
  /// x, lambda = 0, D^2 u = 0.
  static ConcreteFunction linear();
  /// e^(-x^2/2); no lambda equation.
  static ConcreteFunction gaussian_half();
  /// e^x + e^(w x) + e^(w^2 x), w = e^(2 pi i/3); D^3 u = u with lambda = 1.
  static ConcreteFunction cube_root_mix();
};

/// Throws std::invalid_argument for unknown names. Accepts sin, cos, exp,
/// linear, gaussian, cuberoot.
FunctionId function_from_name(std::string_view name);

/// Closed-form Taylor jet. Throws std::invalid_argument for order 0.
Jet jet_of(const ConcreteFunction& f, double x0, std::size_t order);

struct NumericResidual {
  double absolute = 0.0;  // |value at x0|
  double relative = 0.0;  // absolute / scale
  double scale = 0.0;     // max |summand| (at least tiny positive)
};

/// Left side of the binomial chain identity with u = f, lambda = f.lambda_value.
NumericResidual eval_identity_numeric(const ConcreteFunction& f, unsigned n, double x0);

/// sum_k C(n,k) (D-u)^k D^m(u^(n-k)) with u = f (lambda unused).
NumericResidual eval_general_numeric(const ConcreteFunction& f, unsigned n, unsigned m, double x0);

/// P_n e^(-x^2/2) = sum_k C(n,k) D^k(x^(n-k) e^(-x^2/2)).
NumericResidual eval_pn_gaussian(unsigned n, double x0);

/// |(D + x) e^(-x^2/2)| at x0.
double check_exponent_kernel(double x0);

/// D^r u - lambda^r u at x0, relative to |lambda^r u| + |D^r u|.
double equation_residual(const ConcreteFunction& f, double x0);

/// Ten points -0.9, -0.7, ..., 0.9: uniform in [-1, 1], clear of 0.
std::vector<double> sample_points();

}  // namespace opident
