#pragma once

// Operator expressions, lowest to highest precedence:
//   sum/difference  <  product "*"  <  composition "o" or "∘"  <  power "^"  <  atoms
// Atoms are D, generator names, L or λ, rationals "a" or "a/b", and
// parenthesized groups. A leading "-" negates the following product.
// Products need a D-free side; use composition for two operators.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opident/diffalg.hpp"
#include "opident/exactnum.hpp"
#include "opident/opring.hpp"

namespace opident::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  /// Byte offset into the input.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ElaborationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExprNode {
  enum class Kind { D, Generator, Lambda, Rational, Negate, Sum, Difference, Product, Compose, Power, Group };

  Kind kind = Kind::D;
  std::size_t offset = 0;
  std::string name;            // Generator
  Rational value;              // Rational
  unsigned exponent = 0;       // Power
  std::vector<ExprNode> args;  // operands, left to right
};

/// Throws ParseError.
ExprNode parse_operator_expr(std::string_view text);

/// Throws ElaborationError for unknown generators or a product of two
/// operators that both contain D.
OperatorElem elaborate(const ExprNode& ast, const SignaturePtr& sig);

inline OperatorElem parse_operator(std::string_view text, const SignaturePtr& sig) {
  return elaborate(parse_operator_expr(text), sig);
}

/// Fully parenthesized rendering of the tree, for diagnostics.
std::string to_sexpr(const ExprNode& ast);

}  // namespace opident::cli
