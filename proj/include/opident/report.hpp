#pragma once

// Structured result record shared by every checker.

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace opident {

enum class Outcome { Zero, NonZero, Pass, Fail };

std::string_view outcome_name(Outcome o);

using ParamValue = std::variant<long, double, bool, std::string>;

struct VerificationReport {
  std::string check_id;
  std::map<std::string, ParamValue> params;
  Outcome outcome = Outcome::Pass;
  /// Present iff outcome is NonZero or Fail.
  std::optional<std::string> witness;
  std::chrono::duration<double, std::milli> wall_time{0};

  /// What the checker asserts, from params["expect"]: "ZERO", "NONZERO",
  /// "PASS", or absent/"none" for reported-only instances.
  std::optional<Outcome> expected() const;
  /// False only for an asserted check whose outcome differs, or a FAIL.
  bool ok() const;
};

/// Builds a report. Throws std::invalid_argument when a NONZERO or FAIL
/// outcome has no witness; drops a witness given for ZERO or PASS.
VerificationReport make_report(std::string check_id, std::map<std::string, ParamValue> params, Outcome outcome,
                               std::optional<std::string> witness = std::nullopt);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const std::vector<VerificationReport>& rs);
std::string to_human(const VerificationReport& r);

/// Runs body, stores the elapsed time on the returned report.
template <typename F>
VerificationReport timed(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r = body();
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace opident
