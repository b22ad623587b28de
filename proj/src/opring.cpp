#include "opident/opring.hpp"

namespace opident {

OperatorElem::OperatorElem(SignaturePtr sig, std::vector<FuncElem> coeffs)
    : sig_(std::move(sig)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!same_signature(sig_, c.signature())) throw SignatureMismatch();
  }
  trim();
}

OperatorElem::OperatorElem(const FuncElem& f) : sig_(f.signature()) {
  if (!f.is_zero()) coeffs_.push_back(f);
}

OperatorElem OperatorElem::identity(const SignaturePtr& sig) {
  return OperatorElem(FuncElem::constant(sig, 1));
}

OperatorElem OperatorElem::derivation(const SignaturePtr& sig, unsigned power) {
  std::vector<FuncElem> c(power + 1, FuncElem(sig));
  c[power] = FuncElem::constant(sig, 1);
  return OperatorElem(sig, std::move(c));
}

OperatorElem OperatorElem::monic_first_order(const FuncElem& g) {
  return OperatorElem(g.signature(), {g, FuncElem::constant(g.signature(), 1)});
}

FuncElem OperatorElem::coeff(std::size_t j) const {
  return j < coeffs_.size() ? coeffs_[j] : FuncElem(sig_);
}

void OperatorElem::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

OperatorElem OperatorElem::operator-() const {
  OperatorElem r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

OperatorElem& OperatorElem::operator+=(const OperatorElem& o) {
  if (!same_signature(sig_, o.sig_)) throw SignatureMismatch();
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), FuncElem(sig_));
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  trim();
  return *this;
}

OperatorElem& OperatorElem::operator-=(const OperatorElem& o) {
  if (!same_signature(sig_, o.sig_)) throw SignatureMismatch();
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), FuncElem(sig_));
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  trim();
  return *this;
}

OperatorElem& OperatorElem::operator*=(const FuncElem& f) {
  if (!same_signature(sig_, f.signature())) throw SignatureMismatch();
  for (auto& c : coeffs_) c = fe_mul(f, c);
  trim();
  return *this;
}

bool operator==(const OperatorElem& a, const OperatorElem& b) {
  return same_signature(a.sig_, b.sig_) && a.coeffs_ == b.coeffs_;
}

std::string OperatorElem::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  const auto& names = sig_->generators();
  for (std::size_t j = coeffs_.size(); j-- > 0;) {
    const auto& terms = coeffs_[j].terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const auto& lc = it->second.coefficients();
      for (std::size_t p = lc.size(); p-- > 0;) {
        if (lc[p].is_zero()) continue;
        std::string t = render_term(lc[p], p, it->first, names, j);
        if (out.empty()) {
          out = t;
        } else if (t[0] == '-') {
          out += " - " + t.substr(1);
        } else {
          out += " + " + t;
        }
      }
    }
  }
  return out;
}

OperatorElem op_compose(const OperatorElem& p, const OperatorElem& q) {
  if (!same_signature(p.signature(), q.signature())) throw SignatureMismatch();
  const auto& sig = p.signature();
  if (p.is_zero() || q.is_zero()) return OperatorElem(sig);

  const auto max_a = static_cast<std::size_t>(p.order());
  const auto max_b = static_cast<std::size_t>(q.order());

  // derivs[b][i] = D^i(g_b)
  std::vector<std::vector<FuncElem>> derivs(max_b + 1);
  for (std::size_t b = 0; b <= max_b; ++b) {
    derivs[b].push_back(q.coeffs()[b]);
    for (std::size_t i = 1; i <= max_a; ++i) derivs[b].push_back(fe_derive(derivs[b].back()));
  }

  std::vector<FuncElem> out(max_a + max_b + 1, FuncElem(sig));
  for (std::size_t a = 0; a <= max_a; ++a) {
    const FuncElem& f = p.coeffs()[a];
    if (f.is_zero()) continue;
    for (std::size_t b = 0; b <= max_b; ++b) {
      for (std::size_t i = 0; i <= a; ++i) {
        const FuncElem& dg = derivs[b][i];
        if (dg.is_zero()) continue;
        const LambdaPoly binom(Rational(binomial(a, i)));
        out[a + b - i] += fe_mul(f, dg) * binom;
      }
    }
  }
  return OperatorElem(sig, std::move(out));
}

OperatorElem op_power(const OperatorElem& p, unsigned e) {
  OperatorElem r = OperatorElem::identity(p.signature());
  for (unsigned i = 0; i < e; ++i) r = op_compose(r, p);
  return r;
}

FuncElem op_apply(const OperatorElem& p, const FuncElem& f) {
  if (!same_signature(p.signature(), f.signature())) throw SignatureMismatch();
  FuncElem result(p.signature());
  FuncElem d = f;
  for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
    if (j > 0) d = fe_derive(d);
    if (d.is_zero()) break;
    if (!p.coeffs()[j].is_zero()) result += fe_mul(p.coeffs()[j], d);
  }
  return result;
}

RightDivision op_right_divide(const OperatorElem& p, const FuncElem& g) {
  if (!same_signature(p.signature(), g.signature())) throw SignatureMismatch();
  const auto& sig = p.signature();
  if (p.is_zero()) return {OperatorElem(sig), FuncElem(sig)};

  const OperatorElem divisor = OperatorElem::monic_first_order(g);
  OperatorElem rest = p;
  std::vector<FuncElem> quotient(static_cast<std::size_t>(std::max(p.order(), 1)), FuncElem(sig));
  while (rest.order() >= 1) {
    const auto d = static_cast<std::size_t>(rest.order());
    std::vector<FuncElem> lead(d, FuncElem(sig));
    lead[d - 1] = rest.coeffs()[d];
    const OperatorElem step(sig, std::move(lead));
    quotient[d - 1] += rest.coeffs()[d];
    rest -= op_compose(step, divisor);
  }
  return {OperatorElem(sig, std::move(quotient)), rest.coeff(0)};
}

OperatorElem op_gauge(const OperatorElem& p, const FuncElem& h_prime) {
  if (!same_signature(p.signature(), h_prime.signature())) throw SignatureMismatch();
  const auto& sig = p.signature();
  const OperatorElem shifted = OperatorElem::monic_first_order(h_prime);
  OperatorElem result(sig);
  OperatorElem power = OperatorElem::identity(sig);
  for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
    if (j > 0) power = op_compose(power, shifted);
    if (!p.coeffs()[j].is_zero()) result += p.coeffs()[j] * power;
  }
  return result;
}

}  // namespace opident
