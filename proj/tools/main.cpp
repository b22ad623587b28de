#include <iostream>

#include <CLI11.hpp>

#include "opident/cli/run.hpp"

namespace {

template <typename T>
CLI::Option* optional_flag(CLI::App* app, const std::string& name, std::optional<T>& slot, const std::string& help) {
  return app->add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  using opident::cli::Format;
  opident::cli::RunConfig cfg;
  CLI::App app{"Differential-operator identity checker and Radon range-condition demo"};
  app.require_subcommand(1);

  std::string format = "human";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "human or json")->check(CLI::IsMember({"human", "json"}));
    sub->add_option("--out", cfg.out, "write output to PATH");
  };

  auto* verify = app.add_subcommand("verify", "check an identity family exactly");
  verify->add_option("target", cfg.subcommand, "which identity")
      ->required()
      ->check(CLI::IsMember(opident::cli::verify_targets()));
  optional_flag(verify, "--n", cfg.n, "single instance (split, decomposition, general)");
  optional_flag(verify, "--n-max", cfg.n_max, "largest n");
  optional_flag(verify, "--m", cfg.m, "derivative power (general)");
  optional_flag(verify, "--m-max", cfg.m_max, "largest even m (general)");
  common(verify);

  auto* explore = app.add_subcommand("explore", "report the identity for higher-order equations");
  optional_flag(explore, "--order", cfg.order, "order r of D^r u = L^r u")->required();
  optional_flag(explore, "--n-max", cfg.n_max, "largest n");
  common(explore);

  auto* oracle = app.add_subcommand("oracle", "compare symbolic outcomes with jet residuals");
  oracle->add_option("--function", cfg.function, "sin, cos, exp, linear, gaussian, cuberoot");
  optional_flag(oracle, "--n-max", cfg.n_max, "largest n");
  optional_flag(oracle, "--a", cfg.a, "rate for exp");
  common(oracle);

  auto* radon = app.add_subcommand("radon", "Radon transform range conditions");
  radon->add_option("target", cfg.subcommand, "demo, project or moments")
      ->required()
      ->check(CLI::IsMember({"demo", "project", "moments"}));
  optional_flag(radon, "--mu", cfg.mu, "attenuation coefficient");
  optional_flag(radon, "--k-max", cfg.k_max, "largest moment");
  optional_flag(radon, "--size", cfg.size, "phantom width and height");
  optional_flag(radon, "--angles", cfg.angles, "number of angles over [0, 2pi)");
  optional_flag(radon, "--offsets", cfg.offsets, "number of offsets");
  radon->add_option("--in", cfg.input, "input CSV (phantom for project, sinogram for moments)");
  common(radon);

  auto* eval = app.add_subcommand("eval", "normal form of an operator expression");
  eval->add_option("--signature", cfg.signature, "ORDER1, ORDER2, ORDER3, WEYL_X, SPLIT, NILP2");
  eval->add_option("--expr", cfg.expr, "expression, e.g. \"(D - u) o (D - u + L)\"")->required();
  common(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : opident::cli::kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? Format::Json : Format::Human;
  return opident::cli::run(cfg, std::cout, std::cerr);
}
