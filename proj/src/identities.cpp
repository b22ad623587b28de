#include "opident/identities.hpp"

#include <future>
#include <stdexcept>

namespace opident {

namespace {

using Params = std::map<std::string, ParamValue>;

// Checks over distinct n are independent; results come back in n order.
template <typename F>
auto parallel_over(unsigned first, unsigned last, F fn) {
  using R = decltype(fn(first));
  std::vector<std::future<R>> jobs;
  for (unsigned n = first; n <= last; ++n) jobs.push_back(std::async(std::launch::async, fn, n));
  std::vector<R> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

LambdaPoly lp(const BigInt& v) { return LambdaPoly(Rational(v)); }
LambdaPoly lp(long v) { return LambdaPoly(Rational(v)); }

Outcome zero_outcome(const FuncElem& f) { return f.is_zero() ? Outcome::Zero : Outcome::NonZero; }

std::optional<std::string> witness_of(const FuncElem& f) {
  if (f.is_zero()) return std::nullopt;
  return f.to_string();
}

// D - u + shift * L
OperatorElem shifted_factor(const FuncElem& u_expr, long shift) {
  const auto& sig = u_expr.signature();
  FuncElem c0 = -u_expr + FuncElem::constant(sig, LambdaPoly::lambda() * lp(shift));
  return OperatorElem::monic_first_order(c0);
}

const SignaturePtr& anti_signature() {
  static const SignaturePtr sig = [] {
    TermMap img;
    img.emplace(Monomial{1}, -LambdaPoly::lambda());
    return AlgebraSignature::create("ANTI1", {"v"}, {img});
  }();
  return sig;
}

// Ring map Q[L][u, v] -> SPLIT sending u -> v + w and v = Du -> D(v + w).
// It commutes with D, so it carries the ORDER2 identity onto the SPLIT one.
FuncElem order2_to_split(const FuncElem& f) {
  const auto split = preset(Preset::Split);
  const FuncElem su = FuncElem::generator(split, "v") + FuncElem::generator(split, "w");
  const FuncElem sdu = fe_derive(su);
  FuncElem out(split);
  for (const auto& [m, c] : f.terms()) out += fe_pow(su, m[0]) * fe_pow(sdu, m[1]) * c;
  return out;
}

}  // namespace

OperatorElem shifted_chain(const FuncElem& u_expr, unsigned k) {
  OperatorElem chain = OperatorElem::identity(u_expr.signature());
  for (unsigned j = 0; j < k; ++j) chain = op_compose(chain, shifted_factor(u_expr, j));
  return chain;
}

std::vector<FuncElem> identity_terms(const FuncElem& u_expr, unsigned n) {
  const auto& sig = u_expr.signature();
  std::vector<FuncElem> terms;
  OperatorElem chain = OperatorElem::identity(sig);
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) chain = op_compose(chain, shifted_factor(u_expr, k - 1));
    terms.push_back(op_apply(chain, fe_pow(u_expr, n - k)) * lp(binomial(n, k)));
  }
  return terms;
}

FuncElem build_identity_lhs(const SignaturePtr& sig, const FuncElem& u_expr, unsigned n) {
  if (n == 0) throw std::invalid_argument("build_identity_lhs: n must be positive");
  if (!same_signature(sig, u_expr.signature())) throw SignatureMismatch();
  FuncElem sum(sig);
  for (const auto& t : identity_terms(u_expr, n)) sum += t;
  return sum;
}

FuncElem build_identity_lhs_foldright(const FuncElem& u_expr, unsigned n) {
  if (n == 0) throw std::invalid_argument("build_identity_lhs_foldright: n must be positive");
  const auto& sig = u_expr.signature();
  const FuncElem L = FuncElem::lambda(sig);
  FuncElem sum(sig);
  for (unsigned k = 0; k <= n; ++k) {
    FuncElem f = fe_pow(u_expr, n - k);
    for (unsigned j = k; j-- > 0;) {
      f = fe_derive(f) - fe_mul(u_expr, f) + fe_mul(L, f) * lp(static_cast<long>(j));
    }
    sum += f * lp(binomial(n, k));
  }
  return sum;
}

std::vector<VerificationReport> check_theorem1(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("check_theorem1: n_max must be positive");
  return parallel_over(1, n_max, [](unsigned n) {
    return timed([&] {
      const auto sig = preset(Preset::Order1);
      FuncElem lhs = build_identity_lhs(sig, FuncElem::generator(sig, "u"), n);
      Params p{{"n", long(n)}, {"signature", std::string("ORDER1")}, {"lambda", std::string("formal")},
               {"expect", std::string("ZERO")}};
      return make_report("theorem1", std::move(p), zero_outcome(lhs), witness_of(lhs));
    });
  });
}

std::vector<VerificationReport> check_theorem2(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("check_theorem2: n_max must be positive");
  return parallel_over(1, n_max, [](unsigned n) {
    return timed([&] {
      const auto sig = preset(Preset::Order2);
      const FuncElem u = FuncElem::generator(sig, "u");
      FuncElem lhs = build_identity_lhs(sig, u, n);
      Params p{{"n", long(n)}, {"signature", std::string("ORDER2")}, {"lambda", std::string("formal")}};
      Outcome out = zero_outcome(lhs);
      if (n % 2 == 1) {
        p["expect"] = std::string("ZERO");
      } else if (n == 2) {
        p["expect"] = std::string("NONZERO");
        const FuncElem expected_witness = FuncElem::generator(sig, "v") - FuncElem::lambda(sig) * u;
        const bool match = lhs == expected_witness;
        p["witness_matches"] = match;
        if (!match) out = Outcome::Fail;
      } else {
        p["expect"] = std::string("none");
      }
      return make_report("theorem2", std::move(p), out, witness_of(lhs));
    });
  });
}

std::vector<VerificationReport> check_lambda_zero_agreement(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("check_lambda_zero_agreement: n_max must be positive");
  return parallel_over(1, n_max, [](unsigned n) {
    return timed([&] {
      const auto o2 = preset(Preset::Order2);
      const auto nil = preset(Preset::Nilp2);
      const FuncElem a = fe_substitute_lambda(build_identity_lhs(o2, FuncElem::generator(o2, "u"), n), 0);
      const FuncElem b = fe_substitute_lambda(build_identity_lhs(nil, FuncElem::generator(nil, "u"), n), 0);
      const bool agree = a.terms() == b.terms();
      Params p{{"n", long(n)}, {"lambda", std::string("0")}, {"expect", std::string("PASS")},
               {"value", a.to_string()}};
      std::optional<std::string> w;
      if (!agree) w = "ORDER2: " + a.to_string() + "; NILP2: " + b.to_string();
      return make_report("lambda-zero", std::move(p), agree ? Outcome::Pass : Outcome::Fail, w);
    });
  });
}

VerificationReport check_split_cancellation(unsigned n) {
  if (n % 2 == 0) throw std::invalid_argument("check_split_cancellation: n must be odd");
  return timed([&] {
    const auto& sig = anti_signature();
    const auto terms = identity_terms(FuncElem::generator(sig, "v"), n);
    FuncElem total(sig);
    for (const auto& t : terms) total += t;
    std::optional<std::string> w;
    long pairs = 0;
    for (unsigned k = 0; 2 * k < n; ++k) {
      const FuncElem s = terms[k] + terms[n - k];
      if (!s.is_zero() && !w) {
        w = "pair (" + std::to_string(k) + "," + std::to_string(n - k) + "): " + s.to_string();
      }
      if (s.is_zero()) ++pairs;
    }
    if (!total.is_zero() && !w) w = "total: " + total.to_string();
    Params p{{"n", long(n)}, {"signature", std::string("ANTI1")}, {"pairs_cancelled", pairs},
             {"expect", std::string("ZERO")}};
    return make_report("split", std::move(p), w ? Outcome::Fail : Outcome::Zero, w);
  });
}

VerificationReport check_decomposition(unsigned n) {
  if (n == 0) throw std::invalid_argument("check_decomposition: n must be positive");
  return timed([&] {
    const auto split = preset(Preset::Split);
    const FuncElem u = FuncElem::generator(split, "v") + FuncElem::generator(split, "w");
    const FuncElem lhs = build_identity_lhs(split, u, n);
    const auto o2 = preset(Preset::Order2);
    const FuncElem image = order2_to_split(build_identity_lhs(o2, FuncElem::generator(o2, "u"), n));
    const bool matches = lhs == image;
    Params p{{"n", long(n)}, {"signature", std::string("SPLIT")}, {"u", std::string("v + w")},
             {"matches_order2_image", matches}};
    p["expect"] = std::string(n % 2 == 1 ? "ZERO" : (n == 2 ? "NONZERO" : "none"));
    Outcome out = matches ? zero_outcome(lhs) : Outcome::Fail;
    return make_report("decomposition", std::move(p), out, witness_of(lhs));
  });
}

OperatorElem build_Pn(unsigned n) {
  const auto sig = preset(Preset::WeylX);
  const FuncElem x = FuncElem::generator(sig, "x");
  OperatorElem sum(sig);
  for (unsigned k = 0; k <= n; ++k) {
    OperatorElem term = op_compose(OperatorElem::derivation(sig, k), OperatorElem(fe_pow(x, n - k)));
    sum += FuncElem::constant(sig, lp(binomial(n, k))) * term;
  }
  return sum;
}

std::vector<VerificationReport> check_recurrence(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("check_recurrence: n_max must be positive");
  return parallel_over(1, n_max, [](unsigned n) {
    return timed([&] {
      const auto sig = preset(Preset::WeylX);
      const OperatorElem d_plus_x = OperatorElem::monic_first_order(FuncElem::generator(sig, "x"));
      const OperatorElem rhs = op_compose(build_Pn(n + 1), d_plus_x) +
                               FuncElem::constant(sig, lp(long(n) + 1)) * build_Pn(n);
      const OperatorElem diff = build_Pn(n + 2) - rhs;
      Params p{{"n", long(n)}, {"signature", std::string("WEYL_X")}, {"expect", std::string("PASS")}};
      std::optional<std::string> w;
      if (!diff.is_zero()) w = diff.to_string();
      return make_report("recurrence", std::move(p), diff.is_zero() ? Outcome::Pass : Outcome::Fail, w);
    });
  });
}

std::vector<VerificationReport> check_factorization(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("check_factorization: n_max must be positive");
  const auto sig = preset(Preset::WeylX);
  const FuncElem x = FuncElem::generator(sig, "x");
  auto divisions = parallel_over(1, n_max, [&](unsigned n) { return op_right_divide(build_Pn(n), x); });

  std::vector<VerificationReport> out;
  for (unsigned n = 1; n <= n_max; ++n) {
    out.push_back(timed([&] {
      const RightDivision& div = divisions[n - 1];
      const OperatorElem pn = build_Pn(n);
      Params p{{"n", long(n)}, {"signature", std::string("WEYL_X")}, {"quotient", div.quotient.to_string()}};
      std::optional<std::string> fail;
      const OperatorElem recomposed =
          op_compose(div.quotient, OperatorElem::monic_first_order(x)) + OperatorElem(div.remainder);
      if (!(recomposed == pn)) fail = "recomposition differs: " + recomposed.to_string();
      if (n % 2 == 1) {
        p["expect"] = std::string("ZERO");
        if (n >= 3) {
          // quotient(n) = P_(n-1) + (n-1) quotient(n-2)
          const OperatorElem induced =
              build_Pn(n - 1) + FuncElem::constant(sig, lp(long(n) - 1)) * divisions[n - 3].quotient;
          const bool agrees = induced == div.quotient;
          p["induction_agrees"] = agrees;
          if (!agrees && !fail) fail = "induction quotient: " + induced.to_string();
        }
      } else if (n == 2) {
        p["expect"] = std::string("NONZERO");
        if (!(div.remainder == FuncElem::constant(sig, 1)) && !fail) fail = "remainder " + div.remainder.to_string();
      } else {
        p["expect"] = std::string("none");
      }
      if (fail) return make_report("factorize", std::move(p), Outcome::Fail, fail);
      return make_report("factorize", std::move(p), zero_outcome(div.remainder), witness_of(div.remainder));
    }));
  }
  return out;
}

std::vector<VerificationReport> check_gauge_equivalence(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("check_gauge_equivalence: n_max must be positive");
  return parallel_over(0, (n_max - 1) / 2, [](unsigned i) {
    const unsigned n = 2 * i + 1;
    return timed([&] {
      const auto sig = preset(Preset::WeylX);
      const FuncElem x = FuncElem::generator(sig, "x");
      const OperatorElem d_minus_x = OperatorElem::monic_first_order(-x);
      OperatorElem lhs(sig);
      for (unsigned k = 0; k <= n; ++k) {
        lhs += FuncElem::constant(sig, lp(binomial(n, k))) *
               op_compose(op_power(d_minus_x, k), OperatorElem(fe_pow(x, n - k)));
      }
      const OperatorElem gauged = op_gauge(lhs, x);
      const bool eq = gauged == build_Pn(n);
      Params p{{"n", long(n)}, {"signature", std::string("WEYL_X")}, {"h_prime", std::string("x")},
               {"expect", std::string("PASS")}};
      std::optional<std::string> w;
      if (!eq) w = gauged.to_string();
      return make_report("gauge", std::move(p), eq ? Outcome::Pass : Outcome::Fail, w);
    });
  });
}

FuncElem build_general_lhs(unsigned n, unsigned m) {
  if (n % 2 == 0 || m % 2 == 1) throw std::invalid_argument("general theorem needs odd n and even m");
  const auto sig = preset(Preset::Nilp2);
  const FuncElem u = FuncElem::generator(sig, "u");
  const OperatorElem d_minus_u = OperatorElem::monic_first_order(-u);
  FuncElem sum(sig);
  OperatorElem power = OperatorElem::identity(sig);
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) power = op_compose(power, d_minus_u);
    sum += op_apply(power, fe_derive_n(fe_pow(u, n - k), m)) * lp(binomial(n, k));
  }
  return sum;
}

VerificationReport check_general_theorem(unsigned n, unsigned m) {
  return timed([&] {
    const FuncElem lhs = build_general_lhs(n, m);
    Params p{{"n", long(n)}, {"m", long(m)}, {"signature", std::string("NILP2")}, {"expect", std::string("ZERO")}};
    return make_report("general", std::move(p), zero_outcome(lhs), witness_of(lhs));
  });
}

FreeElem free_lemma_lhs(unsigned n) {
  const FreeElem a = FreeElem::word("A");
  const FreeElem b = FreeElem::word("B");
  FreeElem sum;
  for (unsigned k = 0; k <= n; ++k) {
    FreeElem t = free_pow(a - FreeElem(1), k) * free_pow(b + FreeElem(1), n - k);
    t *= Rational(binomial(n, k));
    sum += t;
  }
  return sum;
}

FreeElem free_lemma_rhs(unsigned n) {
  FreeElem sum;
  for (unsigned k = 0; k <= n; ++k) {
    FreeElem t = free_pow(FreeElem::word("A"), k) * free_pow(FreeElem::word("B"), n - k);
    t *= Rational(binomial(n, k));
    sum += t;
  }
  return sum;
}

std::vector<VerificationReport> check_free_lemma(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("check_free_lemma: n_max must be positive");
  return parallel_over(1, n_max, [](unsigned n) {
    return timed([&] {
      const FreeElem diff = free_lemma_lhs(n) - free_lemma_rhs(n);
      Params p{{"n", long(n)}, {"expect", std::string("PASS")},
               {"words", long(free_lemma_rhs(n).terms().size())}};
      std::optional<std::string> w;
      if (!diff.is_zero()) w = diff.to_string();
      return make_report("free-lemma", std::move(p), diff.is_zero() ? Outcome::Pass : Outcome::Fail, w);
    });
  });
}

std::vector<VerificationReport> explore_order(unsigned r, unsigned n_max) {
  if (r == 0 || n_max == 0) throw std::invalid_argument("explore_order: order and n_max must be positive");
  const auto sig = cyclic_signature(r);
  auto out = parallel_over(1, n_max, [&](unsigned n) {
    return timed([&] {
      const FuncElem lhs = build_identity_lhs(sig, FuncElem::generator(sig, "u"), n);
      Params p{{"n", long(n)}, {"order", long(r)}, {"signature", sig->name()},
               {"expect", std::string(n == 1 ? "ZERO" : "none")}};
      return make_report("explore", std::move(p), zero_outcome(lhs), witness_of(lhs));
    });
  });
  if (r == 3 && n_max >= 9) {
    std::string nonzero;
    for (const auto& rep : out) {
      const long n = std::get<long>(rep.params.at("n"));
      if (n % 2 == 1 && n <= 9 && rep.outcome == Outcome::NonZero) {
        nonzero += (nonzero.empty() ? "" : ",") + std::to_string(n);
      }
    }
    Params p{{"order", long(r)}, {"odd_nonzero_n", nonzero.empty() ? std::string("none") : nonzero},
             {"expect", std::string("PASS")}};
    out.push_back(make_report("explore.order3-negative", std::move(p),
                              nonzero.empty() ? Outcome::Fail : Outcome::Pass,
                              nonzero.empty() ? std::optional<std::string>("all odd n <= 9 vanish")
                                              : std::nullopt));
  }
  return out;
}

}  // namespace opident
