#pragma once

// Commutative differential algebras: polynomials over Q[lambda] in a finite
// set of generators, with a derivation D fixed by its value on each generator.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opident/exactnum.hpp"

namespace opident {

/// Exponent vector, one entry per generator of the owning signature.
using Monomial = std::vector<std::uint32_t>;

/// Graded lexicographic order by generator index.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using TermMap = std::map<Monomial, LambdaPoly, GrlexLess>;

class SignatureMismatch : public std::invalid_argument {
 public:
  SignatureMismatch() : std::invalid_argument("operands belong to different algebra signatures") {}
};

class AlgebraSignature;
using SignaturePtr = std::shared_ptr<const AlgebraSignature>;

/// Generators plus the derivation table D(generator_i) = images[i].
class AlgebraSignature {
 public:
  /// Images are term maps over the same generator list. Throws
  /// std::invalid_argument if an image has the wrong arity or a name repeats.
  static SignaturePtr create(std::string name, std::vector<std::string> generators,
                             std::vector<TermMap> images);

  const std::string& name() const { return name_; }
  std::size_t size() const { return generators_.size(); }
  const std::vector<std::string>& generators() const { return generators_; }
  std::optional<std::size_t> index_of(std::string_view generator) const;
  const TermMap& image(std::size_t i) const { return images_.at(i); }

  /// Same generators and same derivation table.
  bool structurally_equal(const AlgebraSignature& other) const;

 private:
  AlgebraSignature(std::string name, std::vector<std::string> generators, std::vector<TermMap> images)
      : name_(std::move(name)), generators_(std::move(generators)), images_(std::move(images)) {}

  std::string name_;
  std::vector<std::string> generators_;
  std::vector<TermMap> images_;
};

bool same_signature(const SignaturePtr& a, const SignaturePtr& b);

enum class Preset { Order1, Order2, Order3, WeylX, Split, Nilp2 };

/// ORDER1 {u; Du=Lu}, ORDER2 {u,v; Du=v, Dv=L^2 u}, ORDER3 {u,v,w; Du=v, Dv=w, Dw=L^3 u},
/// WEYL_X {x; Dx=1}, SPLIT {v,w; Dv=-Lv, Dw=Lw}, NILP2 {u,v; Du=v, Dv=0}.
SignaturePtr preset(Preset which);
std::optional<Preset> preset_from_name(std::string_view name);
std::string_view preset_name(Preset which);

/// Companion-form signature of D^r u = L^r u: generators u, D u, ..., D^{r-1} u.
/// r = 1, 2, 3 return the ORDER1/2/3 presets; higher orders name the
/// generators u, u1, u2, ...
SignaturePtr cyclic_signature(unsigned r);

/// Element of the algebra; canonical term map (no zero coefficients).
class FuncElem {
 public:
  explicit FuncElem(SignaturePtr sig) : sig_(std::move(sig)) {}
  FuncElem(SignaturePtr sig, TermMap terms);

  static FuncElem constant(SignaturePtr sig, const LambdaPoly& c);
  static FuncElem lambda(SignaturePtr sig) { return constant(std::move(sig), LambdaPoly::lambda()); }
  /// Throws std::invalid_argument for unknown names.
  static FuncElem generator(SignaturePtr sig, std::string_view name);
  static FuncElem generator(SignaturePtr sig, std::size_t index);

  const SignaturePtr& signature() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Zero, or only the constant monomial.
  bool is_constant() const;
  /// Total degree in the generators; -1 for zero.
  int degree() const;

  FuncElem operator-() const;
  FuncElem& operator+=(const FuncElem& o);
  FuncElem& operator-=(const FuncElem& o);
  FuncElem& operator*=(const FuncElem& o);
  FuncElem& operator*=(const LambdaPoly& c);

  friend FuncElem operator+(FuncElem a, const FuncElem& b) { return a += b; }
  friend FuncElem operator-(FuncElem a, const FuncElem& b) { return a -= b; }
  friend FuncElem operator*(FuncElem a, const FuncElem& b) { return a *= b; }
  friend FuncElem operator*(FuncElem a, const LambdaPoly& c) { return a *= c; }
  friend FuncElem operator*(const LambdaPoly& c, FuncElem a) { return a *= c; }

  /// Same signature and same terms.
  friend bool operator==(const FuncElem& a, const FuncElem& b);

  /// Parser-compatible text, e.g. "u^2 - L*u + 1/2*v".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const LambdaPoly& c);
  SignaturePtr sig_;
  TermMap terms_;
};

FuncElem fe_mul(const FuncElem& a, const FuncElem& b);
FuncElem fe_derive(const FuncElem& a);
/// times-fold derivative.
FuncElem fe_derive_n(const FuncElem& a, unsigned times);
FuncElem fe_pow(const FuncElem& a, unsigned e);
/// Specializes lambda to a rational value in every coefficient.
FuncElem fe_substitute_lambda(const FuncElem& a, const Rational& value);

/// Renders one term: c * L^lambda_power * monomial * D^d_power.
std::string render_term(const Rational& c, std::size_t lambda_power, const Monomial& m,
                        const std::vector<std::string>& names, std::size_t d_power);

}  // namespace opident
