#pragma once

// Command-line frontend. tools/opident parses argv into a RunConfig and
// calls run(); tests call run() directly.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace opident::cli {

enum class Format { Human, Json };

struct RunConfig {
  std::string command;     // verify, explore, oracle, radon, eval
  std::string subcommand;  // verify and radon targets
  std::optional<long> n;
  std::optional<long> n_max;
  std::optional<long> m;
  std::optional<long> m_max;
  std::optional<long> order;
  std::optional<long> k_max;
  std::optional<long> size;
  std::optional<long> angles;
  std::optional<long> offsets;
  std::optional<double> mu;
  std::optional<double> a;   // oracle exp rate
  std::string function;      // oracle
  std::string signature;     // eval
  std::string expr;          // eval
  std::string input;         // radon project/moments CSV
  Format format = Format::Human;
  std::string out;           // empty: stdout
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for configurations that fail validation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runs the command; reports go to `out` (or the --out file), diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

std::vector<std::string> verify_targets();

}  // namespace opident::cli
