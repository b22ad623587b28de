#pragma once

// Noncommutative polynomials over Q in the letters A and B.

#include <map>
#include <string>

#include "opident/exactnum.hpp"

namespace opident {

class FreeElem {
 public:
  FreeElem() = default;
  FreeElem(const Rational& c);  // NOLINT(google-explicit-constructor)
  FreeElem(long c) : FreeElem(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  /// A single word over {A, B} with coefficient 1. Throws on other letters.
  static FreeElem word(const std::string& w);

  const std::map<std::string, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FreeElem operator-() const;
  FreeElem& operator+=(const FreeElem& o);
  FreeElem& operator-=(const FreeElem& o);
  FreeElem& operator*=(const Rational& c);

  friend FreeElem operator+(FreeElem a, const FreeElem& b) { return a += b; }
  friend FreeElem operator-(FreeElem a, const FreeElem& b) { return a -= b; }
  /// Concatenation product.
  friend FreeElem operator*(const FreeElem& a, const FreeElem& b);
  friend bool operator==(const FreeElem& a, const FreeElem& b) = default;

  /// Longest words first, e.g. "A*A + 2*A*B + B*B".
  std::string to_string() const;

 private:
  void add(const std::string& w, const Rational& c);
  std::map<std::string, Rational> terms_;
};

FreeElem free_pow(const FreeElem& a, unsigned e);

}  // namespace opident
