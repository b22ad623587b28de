#include "opident/diffalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace opident {

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SignaturePtr AlgebraSignature::create(std::string name, std::vector<std::string> generators,
                                      std::vector<TermMap> images) {
  if (images.size() != generators.size()) {
    throw std::invalid_argument("signature '" + name + "': one derivation image per generator required");
  }
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (g.empty() || !seen.insert(g).second) {
      throw std::invalid_argument("signature '" + name + "': empty or repeated generator name");
    }
  }
  for (auto& img : images) {
    for (auto it = img.begin(); it != img.end();) {
      if (it->first.size() != generators.size()) {
        throw std::invalid_argument("signature '" + name + "': derivation image references undeclared generators");
      }
      it = it->second.is_zero() ? img.erase(it) : std::next(it);
    }
  }
  return SignaturePtr(new AlgebraSignature(std::move(name), std::move(generators), std::move(images)));
}

std::optional<std::size_t> AlgebraSignature::index_of(std::string_view generator) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i] == generator) return i;
  }
  return std::nullopt;
}

bool AlgebraSignature::structurally_equal(const AlgebraSignature& other) const {
  return generators_ == other.generators_ && images_ == other.images_;
}

bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
  return a == b || (a && b && a->structurally_equal(*b));
}

namespace {

Monomial unit(std::size_t n, std::size_t i, std::uint32_t e = 1) {
  Monomial m(n, 0);
  m[i] = e;
  return m;
}

TermMap single(Monomial m, LambdaPoly c) {
  TermMap t;
  if (!c.is_zero()) t.emplace(std::move(m), std::move(c));
  return t;
}

SignaturePtr make_preset(Preset which) {
  const LambdaPoly L = LambdaPoly::lambda();
  switch (which) {
    case Preset::Order1:
      return AlgebraSignature::create("ORDER1", {"u"}, {single(unit(1, 0), L)});
    case Preset::Order2:
      return AlgebraSignature::create("ORDER2", {"u", "v"},
                                      {single(unit(2, 1), 1), single(unit(2, 0), L * L)});
    case Preset::Order3:
      return AlgebraSignature::create(
          "ORDER3", {"u", "v", "w"},
          {single(unit(3, 1), 1), single(unit(3, 2), 1), single(unit(3, 0), L * L * L)});
    case Preset::WeylX:
      return AlgebraSignature::create("WEYL_X", {"x"}, {single(Monomial{0}, 1)});
    case Preset::Split:
      return AlgebraSignature::create("SPLIT", {"v", "w"},
                                      {single(unit(2, 0), -L), single(unit(2, 1), L)});
    case Preset::Nilp2:
      return AlgebraSignature::create("NILP2", {"u", "v"}, {single(unit(2, 1), 1), TermMap{}});
  }
  throw std::logic_error("unknown preset");
}

}  // namespace

SignaturePtr preset(Preset which) {
  static const SignaturePtr table[] = {
      make_preset(Preset::Order1), make_preset(Preset::Order2), make_preset(Preset::Order3),
      make_preset(Preset::WeylX),  make_preset(Preset::Split),  make_preset(Preset::Nilp2),
  };
  return table[static_cast<int>(which)];
}

std::string_view preset_name(Preset which) {
  switch (which) {
    case Preset::Order1: return "ORDER1";
    case Preset::Order2: return "ORDER2";
    case Preset::Order3: return "ORDER3";
    case Preset::WeylX: return "WEYL_X";
    case Preset::Split: return "SPLIT";
    case Preset::Nilp2: return "NILP2";
  }
  return "";
}

std::optional<Preset> preset_from_name(std::string_view name) {
  for (Preset p : {Preset::Order1, Preset::Order2, Preset::Order3, Preset::WeylX, Preset::Split, Preset::Nilp2}) {
    if (preset_name(p) == name) return p;
  }
  return std::nullopt;
}

SignaturePtr cyclic_signature(unsigned r) {
  if (r == 0) throw std::invalid_argument("cyclic_signature: order must be positive");
  if (r == 1) return preset(Preset::Order1);
  if (r == 2) return preset(Preset::Order2);
  if (r == 3) return preset(Preset::Order3);
  std::vector<std::string> names{"u"};
  for (unsigned i = 1; i < r; ++i) names.push_back("u" + std::to_string(i));
  std::vector<TermMap> images;
  for (unsigned i = 0; i + 1 < r; ++i) images.push_back(single(unit(r, i + 1), 1));
  LambdaPoly lr = 1;
  for (unsigned i = 0; i < r; ++i) lr *= LambdaPoly::lambda();
  images.push_back(single(unit(r, 0), lr));
  return AlgebraSignature::create("ORDER" + std::to_string(r), std::move(names), std::move(images));
}

// ---------------------------------------------------------------------------

FuncElem::FuncElem(SignaturePtr sig, TermMap terms) : sig_(std::move(sig)) {
  for (auto& [m, c] : terms) {
    if (m.size() != sig_->size()) throw std::invalid_argument("FuncElem: monomial arity mismatch");
    if (!c.is_zero()) terms_.emplace(m, std::move(c));
  }
}

FuncElem FuncElem::constant(SignaturePtr sig, const LambdaPoly& c) {
  const std::size_t n = sig->size();
  return FuncElem(std::move(sig), single(Monomial(n, 0), c));
}

FuncElem FuncElem::generator(SignaturePtr sig, std::string_view name) {
  auto idx = sig->index_of(name);
  if (!idx) throw std::invalid_argument("unknown generator '" + std::string(name) + "' in " + sig->name());
  return generator(std::move(sig), *idx);
}

FuncElem FuncElem::generator(SignaturePtr sig, std::size_t index) {
  const std::size_t n = sig->size();
  return FuncElem(std::move(sig), single(unit(n, index), 1));
}

bool FuncElem::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                            [](std::uint32_t e) { return e == 0; }));
}

int FuncElem::degree() const {
  if (terms_.empty()) return -1;
  const auto& m = terms_.rbegin()->first;
  return static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
}

void FuncElem::add_term(const Monomial& m, const LambdaPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FuncElem FuncElem::operator-() const {
  FuncElem r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

FuncElem& FuncElem::operator+=(const FuncElem& o) {
  if (!same_signature(sig_, o.sig_)) throw SignatureMismatch();
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

FuncElem& FuncElem::operator-=(const FuncElem& o) {
  if (!same_signature(sig_, o.sig_)) throw SignatureMismatch();
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

FuncElem& FuncElem::operator*=(const FuncElem& o) {
  *this = fe_mul(*this, o);
  return *this;
}

FuncElem& FuncElem::operator*=(const LambdaPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

bool operator==(const FuncElem& a, const FuncElem& b) {
  return same_signature(a.sig_, b.sig_) && a.terms_ == b.terms_;
}

FuncElem fe_mul(const FuncElem& a, const FuncElem& b) {
  if (!same_signature(a.signature(), b.signature())) throw SignatureMismatch();
  TermMap out;
  Monomial prod(a.signature()->size());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
      auto c = ca * cb;
      auto [it, inserted] = out.try_emplace(prod, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return FuncElem(a.signature(), std::move(out));
}

FuncElem fe_derive(const FuncElem& a) {
  const auto& sig = a.signature();
  FuncElem result(sig);
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0 || sig->image(i).empty()) continue;
      Monomial rest = m;
      rest[i] -= 1;
      // e_i * x^(m - delta_i) * D(x_i)
      TermMap part;
      for (const auto& [mi, ci] : sig->image(i)) {
        Monomial t = rest;
        for (std::size_t j = 0; j < t.size(); ++j) t[j] += mi[j];
        LambdaPoly coeff = c * ci;
        coeff *= Rational(static_cast<long>(m[i]));
        part.emplace(std::move(t), std::move(coeff));
      }
      result += FuncElem(sig, std::move(part));
    }
  }
  return result;
}

FuncElem fe_derive_n(const FuncElem& a, unsigned times) {
  FuncElem r = a;
  for (unsigned i = 0; i < times && !r.is_zero(); ++i) r = fe_derive(r);
  return r;
}

FuncElem fe_pow(const FuncElem& a, unsigned e) {
  FuncElem result = FuncElem::constant(a.signature(), 1);
  FuncElem base = a;
  while (e > 0) {
    if (e & 1U) result = fe_mul(result, base);
    e >>= 1U;
    if (e > 0) base = fe_mul(base, base);
  }
  return result;
}

FuncElem fe_substitute_lambda(const FuncElem& a, const Rational& value) {
  TermMap out;
  for (const auto& [m, c] : a.terms()) {
    Rational v = lpoly_substitute(c, value);
    if (!v.is_zero()) out.emplace(m, LambdaPoly(v));
  }
  return FuncElem(a.signature(), std::move(out));
}

std::string render_term(const Rational& c, std::size_t lambda_power, const Monomial& m,
                        const std::vector<std::string>& names, std::size_t d_power) {
  std::vector<std::string> factors;
  if (lambda_power > 0) factors.push_back(lambda_power == 1 ? "L" : "L^" + std::to_string(lambda_power));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    factors.push_back(m[i] == 1 ? names[i] : names[i] + "^" + std::to_string(m[i]));
  }
  if (d_power > 0) factors.push_back(d_power == 1 ? "D" : "D^" + std::to_string(d_power));

  const Rational a = c.sign() < 0 ? -c : c;
  std::string out = c.sign() < 0 ? "-" : "";
  bool first = true;
  if (!a.is_one() || factors.empty()) {
    out += a.to_string();
    first = false;
  }
  for (const auto& f : factors) {
    if (!first) out += "*";
    out += f;
    first = false;
  }
  return out;
}

std::string FuncElem::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& coeffs = it->second.coefficients();
    for (std::size_t p = coeffs.size(); p-- > 0;) {
      if (coeffs[p].is_zero()) continue;
      std::string t = render_term(coeffs[p], p, it->first, sig_->generators(), 0);
      if (out.empty()) {
        out = t;
      } else if (t[0] == '-') {
        out += " - " + t.substr(1);
      } else {
        out += " + " + t;
      }
    }
  }
  return out;
}

}  // namespace opident
