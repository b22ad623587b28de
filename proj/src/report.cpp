#include "opident/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace opident {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Zero: return "ZERO";
    case Outcome::NonZero: return "NONZERO";
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
  }
  return "";
}

std::optional<Outcome> VerificationReport::expected() const {
  auto it = params.find("expect");
  if (it == params.end()) return std::nullopt;
  const auto* s = std::get_if<std::string>(&it->second);
  if (s == nullptr) return std::nullopt;
  for (Outcome o : {Outcome::Zero, Outcome::NonZero, Outcome::Pass, Outcome::Fail}) {
    if (*s == outcome_name(o)) return o;
  }
  return std::nullopt;
}

bool VerificationReport::ok() const {
  if (outcome == Outcome::Fail) return false;
  auto e = expected();
  return !e || *e == outcome;
}

VerificationReport make_report(std::string check_id, std::map<std::string, ParamValue> params, Outcome outcome,
                               std::optional<std::string> witness) {
  const bool needs_witness = outcome == Outcome::NonZero || outcome == Outcome::Fail;
  if (needs_witness && !witness) throw std::invalid_argument("report " + check_id + ": outcome needs a witness");
  if (!needs_witness) witness.reset();
  VerificationReport r;
  r.check_id = std::move(check_id);
  r.params = std::move(params);
  r.outcome = outcome;
  r.witness = std::move(witness);
  return r;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) {
    std::visit([&](const auto& x) { params[k] = x; }, v);
  }
  nlohmann::json j;
  j["check_id"] = r.check_id;
  j["params"] = std::move(params);
  j["outcome"] = std::string(outcome_name(r.outcome));
  if (r.witness) j["witness"] = *r.witness;
  j["wall_time_ms"] = r.wall_time.count();
  return j;
}

nlohmann::json to_json(const std::vector<VerificationReport>& rs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rs) arr.push_back(to_json(r));
  return arr;
}

std::string to_human(const VerificationReport& r) {
  std::string line = r.check_id;
  for (const auto& [k, v] : r.params) {
    line += " " + k + "=";
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::string>) {
            line += x;
          } else if constexpr (std::is_same_v<T, bool>) {
            line += x ? "true" : "false";
          } else if constexpr (std::is_same_v<T, double>) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", x);
            line += buf;
          } else {
            line += std::to_string(x);
          }
        },
        v);
  }
  line += "  -> ";
  line += outcome_name(r.outcome);
  if (r.witness && !r.witness->empty()) line += "  witness: " + *r.witness;
  return line;
}

}  // namespace opident
