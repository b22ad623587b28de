// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "opident/cli/parser.hpp"
#include "opident/cli/run.hpp"
#include "opident/identities.hpp"
#include "opident/jetoracle.hpp"
#include "random_elems.hpp"

using namespace opident;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

long n_of(const VerificationReport& r) { return std::get<long>(r.params.at("n")); }

bool all_outcome(const std::vector<VerificationReport>& rs, Outcome o) {
  return std::all_of(rs.begin(), rs.end(), [o](const VerificationReport& r) { return r.outcome == o; });
}

double dbinom(unsigned n, unsigned k) {
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Relative residual of sum_k C(n,k) prod_{j<k} (D - u + j L) u^(n-k) for an
// arbitrary jet u, innermost factor applied first.
double identity_residual(const Jet& u, Complex lambda, unsigned n) {
  Complex sum = 0.0;
  double scale = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    Jet g = Jet::constant(u.base_point(), 1.0, u.order());
    for (unsigned i = 0; i < n - k; ++i) g = g * u;
    for (unsigned j = k; j-- > 0;) g = g.derivative() - u * g + (double(j) * lambda) * g;
    const Complex term = dbinom(n, k) * g.value();
    scale = std::max(scale, std::abs(term));
    sum += term;
  }
  return std::abs(sum) / std::max(scale, 1e-300);
}

// max over the sample points, and how many exceed 1e-3
struct Sweep {
  double worst = 0.0;
  int above = 0;
};

Sweep sweep(const std::function<double(double)>& residual) {
  Sweep s;
  for (double x0 : sample_points()) {
    const double r = residual(x0);
    s.worst = std::max(s.worst, r);
    if (r > 1e-3) ++s.above;
  }
  return s;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

Verdict criterion1() {
  Verdict v;
  const auto t = Clock::now();
  const auto rs = check_theorem1(12);
  const double secs = seconds_since(t);
  v.require(rs.size() == 12 && all_outcome(rs, Outcome::Zero), "some n <= 12 not ZERO");
  v.require(secs < 60.0, "took " + std::to_string(secs) + " s");
  if (v.pass) v.detail = "ORDER1 n=1..12 ZERO in " + sci(secs) + " s";
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto rs = check_theorem2(11);
  const auto s = preset(Preset::Order2);
  const FuncElem want = FuncElem::generator(s, "v") - FuncElem::lambda(s) * FuncElem::generator(s, "u");
  for (const auto& r : rs) {
    const long n = n_of(r);
    if (n % 2 == 1) v.require(r.outcome == Outcome::Zero, "n=" + std::to_string(n) + " not ZERO");
    if (n == 2) {
      v.require(r.outcome == Outcome::NonZero && r.witness == want.to_string(),
                "n=2 witness " + r.witness.value_or("none"));
    }
  }
  double off = 0.0;
  for (double x0 : sample_points()) {
    off = std::max(off, std::abs(eval_identity_numeric(ConcreteFunction::sin(), 2, x0).absolute - 1.0));
  }
  v.require(off < 1e-9, "sin n=2 residual modulus off from 1 by " + sci(off));
  if (v.pass) v.detail = "odd n<=11 ZERO; n=2 witness " + want.to_string() + "; |sin residual| = 1 within " + sci(off);
  return v;
}

Verdict criterion3() {
  Verdict v;
  const auto rs = check_lambda_zero_agreement(11);
  v.require(rs.size() == 11 && all_outcome(rs, Outcome::Pass), "ORDER2 at L=0 differs from NILP2");
  if (v.pass) v.detail = "ORDER2|L=0 == NILP2 for n=1..11";
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto rec = check_recurrence(10);
  v.require(rec.size() == 10 && all_outcome(rec, Outcome::Pass), "recurrence");
  for (const auto& r : check_factorization(11)) {
    const long n = n_of(r);
    if (n % 2 == 1) v.require(r.outcome == Outcome::Zero, "remainder at n=" + std::to_string(n));
    if (n == 2) v.require(r.outcome == Outcome::NonZero && r.witness == "1", "n=2 remainder " + r.witness.value_or(""));
  }
  const auto gauge = check_gauge_equivalence(9);
  v.require(gauge.size() == 5 && all_outcome(gauge, Outcome::Pass), "gauge equivalence");
  if (v.pass) v.detail = "recurrence n<=10; remainder 0 for odd n<=11, 1 at n=2; gauge odd n<=9";
  return v;
}

Verdict criterion5() {
  Verdict v;
  for (unsigned n : {1u, 3u, 5u, 7u}) {
    v.require(check_split_cancellation(n).outcome == Outcome::Zero, "split n=" + std::to_string(n));
  }
  for (unsigned n = 1; n <= 9; n += 2) {
    v.require(check_decomposition(n).outcome == Outcome::Zero, "decomposition n=" + std::to_string(n));
  }
  const auto fl = check_free_lemma(6);
  v.require(fl.size() == 6 && all_outcome(fl, Outcome::Pass), "free lemma");
  if (v.pass) v.detail = "pairwise cancellation odd n<=7; SPLIT u=v+w ZERO odd n<=9; free lemma n<=6";
  return v;
}

Verdict criterion6() {
  Verdict v;
  for (unsigned n = 1; n <= 7; n += 2) {
    for (unsigned m = 0; m <= 4; m += 2) {
      v.require(check_general_theorem(n, m).outcome == Outcome::Zero,
                "general n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  const auto ex = explore_order(3, 9);
  v.require(!ex.empty() && ex.front().outcome == Outcome::Zero, "order 3 n=1 not ZERO");
  std::string confirmed;
  for (const auto& r : ex) {
    if (r.check_id != "explore" || r.outcome != Outcome::NonZero || n_of(r) % 2 == 0) continue;
    const unsigned n = n_of(r);
    const Sweep s = sweep([n](double x0) { return eval_identity_numeric(ConcreteFunction::cube_root_mix(), n, x0).relative; });
    v.require(s.above >= 9, "oracle misses order-3 n=" + std::to_string(n));
    confirmed += (confirmed.empty() ? "" : ",") + std::to_string(n);
  }
  v.require(!confirmed.empty(), "no odd n<=9 NONZERO for order 3");
  if (v.pass) v.detail = "general odd n<=7 x m in {0,2,4} ZERO; order 3 odd NONZERO n=" + confirmed + " (oracle-confirmed)";
  return v;
}

Verdict criterion7() {
  Verdict v;
  double worst = 0.0;
  auto zero = [&](const std::string& what, const std::function<double(double)>& residual) {
    const Sweep s = sweep(residual);
    worst = std::max(worst, s.worst);
    v.require(s.worst < 1e-8, what + " residual " + sci(s.worst));
  };
  for (unsigned n = 1; n <= 12; ++n) {
    zero("ORDER1 n=" + std::to_string(n),
         [n](double x) { return eval_identity_numeric(ConcreteFunction::exp_a(1), n, x).relative; });
  }
  for (unsigned n = 1; n <= 11; n += 2) {
    zero("ORDER2 n=" + std::to_string(n),
         [n](double x) { return eval_identity_numeric(ConcreteFunction::sin(), n, x).relative; });
    zero("NILP2 n=" + std::to_string(n),
         [n](double x) { return eval_identity_numeric(ConcreteFunction::linear(), n, x).relative; });
    zero("P_n gaussian n=" + std::to_string(n), [n](double x) { return eval_pn_gaussian(n, x).relative; });
  }
  for (unsigned n = 1; n <= 7; n += 2) {
    zero("anti-exponential n=" + std::to_string(n),
         [n](double x) { return eval_identity_numeric(ConcreteFunction::exp_a_reversed(-1.0), n, x).relative; });
    for (unsigned m = 0; m <= 4; m += 2) {
      zero("general n=" + std::to_string(n),
           [n, m](double x) { return eval_general_numeric(ConcreteFunction::linear(), n, m, x).relative; });
    }
  }
  for (unsigned n = 1; n <= 9; n += 2) {
    zero("e^-x + e^x n=" + std::to_string(n), [n](double x) {
      const Jet u = jet_of(ConcreteFunction::exp_a(-1.0), x, n + 2) + jet_of(ConcreteFunction::exp_a(1.0), x, n + 2);
      return identity_residual(u, 1.0, n);
    });
  }
  zero("order 3 n=1", [](double x) { return eval_identity_numeric(ConcreteFunction::cube_root_mix(), 1, x).relative; });
  double kernel = 0.0;
  for (double x0 : {-2.5, -1.0, 0.0, 0.7, 1.0}) kernel = std::max(kernel, check_exponent_kernel(x0));
  v.require(kernel < 1e-12, "(D+x)e^{-x^2/2} residual " + sci(kernel));
  if (v.pass) v.detail = "all ZERO instances below 1e-8 (max " + sci(worst) + "); kernel " + sci(kernel);
  return v;
}

Verdict criterion8() {
  Verdict v;
  cli::RunConfig c;
  c.command = "radon";
  c.subcommand = "demo";
  c.size = 256;
  c.angles = 360;
  c.offsets = 363;
  c.mu = 0.5;
  c.k_max = 4;
  c.format = cli::Format::Json;
  std::ostringstream out, err;
  const auto t = Clock::now();
  const int code = cli::run(c, out, err);
  const double secs = seconds_since(t);
  v.require(code == cli::kExitOk, "demo exit " + std::to_string(code) + " " + err.str());
  v.require(secs < 120.0, "demo took " + std::to_string(secs) + " s");
  if (code == cli::kExitOk) {
    const auto reports = nlohmann::json::parse(out.str());
    double evenness = 1.0, leak0 = 1.0, disc = 1.0;
    double ratio = 0.0;
    for (const auto& r : reports) {
      const auto& p = r["params"];
      if (r["check_id"] == "radon.evenness") evenness = p["residual"];
      if (r["check_id"] == "radon.range" && p["mu"] == 0.0) {
        leak0 = 0.0;
        for (int k = 0; k <= 4; ++k) leak0 = std::max(leak0, p["leakage_k" + std::to_string(k)].get<double>());
        disc = p["discrepancy"];
      }
      if (r["check_id"] == "radon.range" && p["mu"] == 0.5) {
        const auto& lr = p["leakage_ratio"];
        ratio = lr.is_string() ? std::numeric_limits<double>::infinity() : lr.get<double>();
      }
    }
    v.require(evenness < 1e-2, "evenness " + sci(evenness));
    v.require(leak0 < 1e-2, "mu=0 leakage " + sci(leak0));
    v.require(disc < 2e-2, "moment discrepancy " + sci(disc));
    v.require(ratio >= 10.0, "leakage ratio " + sci(ratio));
    if (v.pass) {
      v.detail = "evenness " + sci(evenness) + ", leakage " + sci(leak0) + ", discrepancy " + sci(disc) +
                 ", mu=0.5 ratio " + sci(ratio) + ", " + sci(secs) + " s";
    }
  }
  return v;
}

Verdict criterion9() {
  Verdict v;
  proptest::RandomElems rnd(20261015);
  int checked = 0;
  for (Preset p : proptest::all_presets()) {
    const auto s = preset(p);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const OperatorElem op = rnd.op(s);
      try {
        if (!(cli::parse_operator(op.to_string(), s) == op)) ++bad;
      } catch (const std::exception&) {
        ++bad;
      }
      ++checked;
    }
    v.require(bad == 0, std::string(preset_name(p)) + ": " + std::to_string(bad) + " mismatches");
  }
  if (v.pass) v.detail = std::to_string(checked) + " random operators re-parse to themselves";
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, Verdict (*)()> criteria[] = {
      {"theorem 1", criterion1}, {"theorem 2", criterion2},  {"lambda=0 route", criterion3},
      {"P_n machinery", criterion4}, {"proof steps", criterion5}, {"generalization", criterion6},
      {"jet oracle", criterion7},  {"radon", criterion8},      {"parser round-trip", criterion9}};
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d [%s] %s: %s\n", index++, v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    if (!v.pass) ++failed;
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
