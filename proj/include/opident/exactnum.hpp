#pragma once

// Exact scalars: GMP-backed rationals, polynomials in the formal symbol
// lambda over Q, and binomial coefficients.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace opident {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "a" or "a/b" (optional leading '-'). Throws std::invalid_argument.
  static Rational parse(const std::string& text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  double to_double() const { return q_.get_d(); }
  std::string to_string() const { return q_.get_str(); }

  Rational inverse() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_{0};
};

/// C(n, k); zero when k > n.
BigInt binomial(unsigned long n, unsigned long k);

/// Polynomial in lambda with rational coefficients, index = power of lambda.
/// Canonical: no trailing zero coefficients (the zero polynomial is empty).
class LambdaPoly {
 public:
  LambdaPoly() = default;
  LambdaPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  LambdaPoly(long c) : LambdaPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit LambdaPoly(std::vector<Rational> coeffs);
  LambdaPoly(std::initializer_list<Rational> coeffs)
      : LambdaPoly(std::vector<Rational>(coeffs)) {}

  /// The monomial c * lambda^power.
  static LambdaPoly monomial(const Rational& c, std::size_t power);
  static LambdaPoly lambda() { return monomial(Rational(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t power) const;

  LambdaPoly operator-() const;
  LambdaPoly& operator+=(const LambdaPoly& o);
  LambdaPoly& operator-=(const LambdaPoly& o);
  LambdaPoly& operator*=(const LambdaPoly& o);
  LambdaPoly& operator*=(const Rational& c);

  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator*(LambdaPoly a, const LambdaPoly& b) { return a *= b; }

  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) = default;

  std::string to_string(const std::string& symbol = "L") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Evaluates p at lambda = value (Horner).
Rational lpoly_substitute(const LambdaPoly& p, const Rational& value);

}  // namespace opident
