#pragma once

// Differential operators over a diffalg signature in normal form
// sum_j f_j * D^j (every function coefficient to the left of D).

#include <string>
#include <vector>

#include "opident/diffalg.hpp"

namespace opident {

class OperatorElem {
 public:
  /// The zero operator.
  explicit OperatorElem(SignaturePtr sig) : sig_(std::move(sig)) {}
  /// coeffs[j] multiplies D^j. Trailing zeros are dropped.
  OperatorElem(SignaturePtr sig, std::vector<FuncElem> coeffs);
  /// Multiplication by f.
  explicit OperatorElem(const FuncElem& f);

  static OperatorElem identity(const SignaturePtr& sig);
  static OperatorElem derivation(const SignaturePtr& sig, unsigned power = 1);
  /// D + g
  static OperatorElem monic_first_order(const FuncElem& g);

  const SignaturePtr& signature() const { return sig_; }
  const std::vector<FuncElem>& coeffs() const { return coeffs_; }
  /// Coefficient of D^j, zero past the order.
  FuncElem coeff(std::size_t j) const;
  /// Highest D power; -1 for the zero operator.
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  OperatorElem operator-() const;
  OperatorElem& operator+=(const OperatorElem& o);
  OperatorElem& operator-=(const OperatorElem& o);
  /// Left multiplication of every coefficient by f.
  OperatorElem& operator*=(const FuncElem& f);

  friend OperatorElem operator+(OperatorElem a, const OperatorElem& b) { return a += b; }
  friend OperatorElem operator-(OperatorElem a, const OperatorElem& b) { return a -= b; }
  friend OperatorElem operator*(const FuncElem& f, OperatorElem p) { return p *= f; }
  friend bool operator==(const OperatorElem& a, const OperatorElem& b);

  /// Parser-compatible text, highest D power first, e.g. "D^2 - 2*u*D + u^2".
  std::string to_string() const;

 private:
  void trim();
  SignaturePtr sig_;
  std::vector<FuncElem> coeffs_;
};

/// Normal form of p o q, using
/// (f D^a) o (g D^b) = sum_i C(a,i) f D^i(g) D^(a+b-i).
OperatorElem op_compose(const OperatorElem& p, const OperatorElem& q);
OperatorElem op_power(const OperatorElem& p, unsigned e);

/// sum_j coeff_j * D^j(f)
FuncElem op_apply(const OperatorElem& p, const FuncElem& f);

struct RightDivision {
  OperatorElem quotient;
  FuncElem remainder;
};

/// p = quotient o (D + g) + remainder, remainder of D-degree 0.
RightDivision op_right_divide(const OperatorElem& p, const FuncElem& g);

/// Conjugation by a formal exponential whose derivative is h_prime: every
/// D^j is replaced by (D + h_prime)^j.
OperatorElem op_gauge(const OperatorElem& p, const FuncElem& h_prime);

}  // namespace opident
