#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace holonomy::cli;

  CLI::App app{"holonomy_lab: holonomy and monodromy of flat connections on the punctured plane"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  Flags flags;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string csv, path, i0, matrix;

  app.add_option("--config", config_file, "Scene config (YAML)");
  auto* tol_opt = app.add_option("--tol", tol, "Transport tolerance");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  auto* csv_opt = app.add_option("--csv", csv, "Trajectory CSV output (transport)");
  auto* path_opt = app.add_option("--path", path, "Named path from the config");
  auto* i0_opt = app.add_option("--i0", i0, "Initial spin components, e.g. '1, [0, 1], 0'");
  auto* matrix_opt = app.add_option("--matrix", matrix, "Matrix file or inline rows of [re, im] pairs");
  app.add_flag("--assume-flat", flags.assume_flat, "Accept a custom connection as flat");
  app.add_flag("--verify-ad", flags.verify_ad, "Also run the Ad(rho) check (wong)");
  app.add_option("--group", flags.group, "Fundamental group for vacua")->check(CLI::IsMember({"Z", "Z2"}));

  const std::pair<const char*, const char*> subcommands[] = {
      {"flatness", "Finite-difference curvature along paths and region nodes"},
      {"transport", "Parallel transport matrix along config paths"},
      {"monodromy", "Lasso generator holonomies from the basepoint"},
      {"abphase", "Numeric vs predicted Aharonov-Bohm phase"},
      {"wong", "Transport a spin variable and check isospectrality"},
      {"vacua", "Classify a unitary representation of Z or Z2"},
      {"ym-energy", "Yang-Mills energy over the config region"},
      {"verify", "Built-in reference checks"},
  };
  for (const auto& [name, help] : subcommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (tol_opt->count()) flags.tol = tol;
  if (seed_opt->count()) flags.seed = seed;
  if (csv_opt->count()) flags.csv = csv;
  if (path_opt->count()) flags.path = path;
  if (i0_opt->count()) flags.i0 = i0;
  if (matrix_opt->count()) flags.matrix = matrix;

  std::optional<SceneConfig> config;
  if (!config_file.empty()) {
    try {
      config = load_config(config_file);
    } catch (const holonomy::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  const CommandResult result = run_subcommand(app.get_subcommands().front()->get_name(), config, flags);
  (result.exit_code == kExitOk ? std::cout : std::cerr) << result.report;
  return result.exit_code;
}
