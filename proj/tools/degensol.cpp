// Command-line front end. Subcommands:
//   build    evaluate the configured tables over the grid
//   verify   run the verification battery on the configured family
//   fields   potentials and field strengths over the grid
//   spin     spin expectation densities over the grid
//   sweep    re-check residual invariance under ten random potential shifts
//   selftest run the built-in acceptance suite
//
// Exit codes: 0 success, 1 verification failure, 2 configuration problem,
// 3 expression parse problem. All file output is byte-stable for a fixed
// config and seed; timing goes to stdout only.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "degen/degen.hpp"

namespace {

degen::RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw degen::ConfigError("cannot open config file: " + path);
  degen::json j;
  try {
    j = degen::json::parse(in);
  } catch (const degen::json::parse_error& e) {
    throw degen::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return degen::parse_config(j);
}

int run(degen::Subcommand cmd, const std::string& config_path,
        const std::optional<std::string>& out_override,
        const std::optional<std::uint64_t>& seed_override) {
  degen::RunConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  if (seed_override) cfg.seed = *seed_override;
  const std::filesystem::path out_dir = out_override ? *out_override : cfg.out_dir;

  const auto start = std::chrono::steady_clock::now();
  const degen::RunOutcome outcome = degen::execute(cmd, cfg, out_dir);
  const auto stop = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(stop - start).count();

  for (const auto& file : outcome.written)
    std::cout << "wrote " << (out_dir / file).string() << "\n";
  if (outcome.report.contains("summary")) {
    const auto& s = outcome.report["summary"];
    std::cout << "status: " << s["status"].get<std::string>() << " ("
              << s["checks_passed"].get<int>() << " passed, "
              << s["checks_failed"].get<int>() << " failed, "
              << s["checks_skipped"].get<int>() << " skipped)\n";
  }
  std::cout << "elapsed: " << ms << " ms\n";
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degenerate spinor family constructor and verifier"};
  app.require_subcommand(1);

  struct Args {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
  };
  Args args;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", args.config, "path to a JSON run config");
    if (config_required) opt->required();
    sub->add_option("--out", args.out, "output directory (overrides the config)");
    sub->add_option("--seed", args.seed, "random seed (overrides the config)");
  };

  add_common(app.add_subcommand("build", "evaluate configured tables over the grid"), true);
  add_common(app.add_subcommand("verify", "run the verification battery"), true);
  add_common(app.add_subcommand("fields", "write potentials and field strengths"), true);
  add_common(app.add_subcommand("spin", "write spin expectation densities"), true);
  add_common(app.add_subcommand("sweep", "re-check invariance under random shifts"), true);
  add_common(app.add_subcommand("selftest", "run the built-in acceptance suite"), false);

  CLI11_PARSE(app, argc, argv);

  degen::Subcommand cmd = degen::Subcommand::selftest;
  if (app.get_subcommand("build")->parsed()) cmd = degen::Subcommand::build;
  else if (app.get_subcommand("verify")->parsed()) cmd = degen::Subcommand::verify;
  else if (app.get_subcommand("fields")->parsed()) cmd = degen::Subcommand::fields;
  else if (app.get_subcommand("spin")->parsed()) cmd = degen::Subcommand::spin;
  else if (app.get_subcommand("sweep")->parsed()) cmd = degen::Subcommand::sweep;

  try {
    return run(cmd, args.config, args.out, args.seed);
  } catch (const degen::SyntaxError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 3;
  } catch (const degen::UnknownIdentifierError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 3;
  } catch (const degen::ArityError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 3;
  } catch (const degen::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
