// Batch front-end: dyndet <command> --config run.json [--out dir] [overrides]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dyndet/cli.hpp"
#include "dyndet/config.hpp"
#include "dyndet/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Periodic-orbit determinants, SRB averages and linear response for expanding "
               "circle maps"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<unsigned> workers;
  std::optional<int> n_max;
  std::optional<double> tau;
  std::optional<int> bins;
  std::optional<double> fd_step;
  std::optional<int> period;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (default: params.out_dir or .)");
  app.add_option("--workers", workers, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  app.add_option("--n-max", n_max, "determinant truncation order");
  app.add_option("--tau", tau, "map parameter (base point)");
  app.add_option("--bins", bins, "Ulam bin count");
  app.add_option("--fd-step", fd_step, "finite-difference step of the Ulam response");
  app.add_option("--period", period, "period n for periodic-points");

  for (const auto& name : dyndet::command_names())
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dyndet::kExitValidation;
  }

  std::optional<dyndet::RunConfig> config;
  try {
    config = dyndet::load_config(config_path);
  } catch (const dyndet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dyndet::kExitValidation;
  }
  auto& p = config->params;
  if (out_dir)
    p.out_dir = *out_dir;
  if (workers)
    p.workers = *workers;
  if (n_max)
    p.n_max = *n_max;
  if (tau)
    p.tau = *tau;
  if (bins)
    p.bins = *bins;
  if (fd_step)
    p.fd_step = *fd_step;
  if (period)
    p.period = *period;

  const std::string command = app.get_subcommands().front()->get_name();
  return dyndet::run(command, *config, std::cerr);
}
