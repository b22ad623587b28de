#pragma once

// Builders and exact checkers for the binomial-type operator identities
//
//   sum_{k=0}^{n} C(n,k) (D-u) o (D-u+L) o ... o (D-u+(k-1)L) u^(n-k) = 0,
//
// the Weyl-algebra operators P_n = sum_k C(n,k) D^k o x^(n-k), and the
// related recurrence, factorization, gauge, free-algebra and higher-order
// statements.

#include <vector>

#include "opident/diffalg.hpp"
#include "opident/freealg.hpp"
#include "opident/opring.hpp"
#include "opident/report.hpp"

namespace opident {

/// (D - u + L) o ... composed left to right: chain_k = prod_{j<k} (D - u + j L).
/// chain_0 is the identity.
OperatorElem shifted_chain(const FuncElem& u_expr, unsigned k);

/// Individual summands C(n,k) chain_k(u^(n-k)) for k = 0..n.
std::vector<FuncElem> identity_terms(const FuncElem& u_expr, unsigned n);

/// Sum of identity_terms, with chains composed as operators and then applied.
/// Throws std::invalid_argument for n = 0.
FuncElem build_identity_lhs(const SignaturePtr& sig, const FuncElem& u_expr, unsigned n);

/// Same sum, applying the factors one by one to u^(n-k), innermost first.
FuncElem build_identity_lhs_foldright(const FuncElem& u_expr, unsigned n);

std::vector<VerificationReport> check_theorem1(unsigned n_max);
std::vector<VerificationReport> check_theorem2(unsigned n_max);

/// The ORDER2 result at L = 0 against the NILP2 result (also at L = 0).
std::vector<VerificationReport> check_lambda_zero_agreement(unsigned n_max);

/// {v; Dv = -L v}: term_k + term_(n-k) = 0 pairwise. Throws for even n.
VerificationReport check_split_cancellation(unsigned n);
/// SPLIT preset with u = v + w.
VerificationReport check_decomposition(unsigned n);

/// WEYL_X operators P_n.
OperatorElem build_Pn(unsigned n);
std::vector<VerificationReport> check_recurrence(unsigned n_max);
std::vector<VerificationReport> check_factorization(unsigned n_max);
/// gauge(sum_k C(n,k) (D-x)^k o x^(n-k), h' = x) == P_n for odd n.
std::vector<VerificationReport> check_gauge_equivalence(unsigned n_max);

/// NILP2: sum_k C(n,k) (D-u)^k D^m(u^(n-k)). Throws unless n odd, m even.
FuncElem build_general_lhs(unsigned n, unsigned m);
VerificationReport check_general_theorem(unsigned n, unsigned m);

/// sum C(n,k)(A-1)^k (B+1)^(n-k) and sum C(n,k) A^k B^(n-k).
FreeElem free_lemma_lhs(unsigned n);
FreeElem free_lemma_rhs(unsigned n);
std::vector<VerificationReport> check_free_lemma(unsigned n_max);

/// D^r u = L^r u. Per-n ZERO/NONZERO table; for r = 3 and n_max >= 9 a
/// trailing summary report asserts some odd n <= 9 is NONZERO.
std::vector<VerificationReport> explore_order(unsigned r, unsigned n_max);

}  // namespace opident
