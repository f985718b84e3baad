// cohlab: exact coherent-state qubit dynamics in a bosonic bath.
//
//   cohlab propagator --s 0.5,1,3 --eta0 0.5 --out runs/
//   cohlab channel --code phase --n 3 --s 3 --eta0 0.5
//   cohlab figure 5 --out fig5/
//   cohlab sweep alpha0 0.6,1.2,2.0 --eta0 0

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cohlab/cli/commands.hpp"
#include "cohlab/cli/config.hpp"

namespace {

using cohlab::cli::Setting;

struct Flags {
  std::optional<std::string> config;
  std::vector<Setting> overrides;
};

// Every physical flag becomes a Setting so the file and the command line go
// through the same validation.
void add_override(CLI::App& app, Flags& flags, const std::string& flag, const std::string& key,
                  const std::string& help) {
  app.add_option_function<std::string>(
         flag, [&flags, key, flag](const std::string& value) { flags.overrides.push_back({key, value, flag}); },
         help)
      ->type_name("VALUE");
}

int report(const cohlab::cli::CommandResult& result) {
  for (const auto& file : result.files) std::cout << file.string() << '\n';
  for (const auto& failure : result.failures) std::cerr << "error: " << failure << '\n';
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dynamics of coherent-state qubits and entangled channels in a bosonic bath"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config, "Flat key = value configuration file")->check(CLI::ExistingFile);
    add_override(*cmd, flags, "--out", "out", "Output directory");
    add_override(*cmd, flags, "--solver", "solver", "volterra, laplace or both");
    add_override(*cmd, flags, "--s", "s", "Bath exponent(s), comma-separated");
    add_override(*cmd, flags, "--eta0", "eta0", "Coupling strength(s), comma-separated");
    add_override(*cmd, flags, "--omega0", "omega0", "Mode frequency in units of omega_c");
    add_override(*cmd, flags, "--alpha0", "alpha0", "Initial coherent amplitude");
    add_override(*cmd, flags, "--code", "code", "none, phase or bit");
    add_override(*cmd, flags, "--n", "n", "Code length");
    add_override(*cmd, flags, "--tmax", "tmax", "Final time in units of 1/omega_c (or 'auto')");
    add_override(*cmd, flags, "--points", "points", "Number of output samples");
  };

  auto* propagator = app.add_subcommand("propagator", "Write u(t) for each (s, eta0)");
  auto* channel = app.add_subcommand("channel", "Write concurrence and teleportation fidelity over time");
  auto* figure = app.add_subcommand("figure", "Write the data and a plot recipe for one figure");
  auto* sweep = app.add_subcommand("sweep", "Write a long-format table over one parameter");
  for (auto* cmd : {propagator, channel, figure, sweep}) add_common(cmd);

  std::string figure_id;
  figure->add_option("id", figure_id, "1a, 1b, 2a, 2b, 3, 4, 5 or 6")->required();
  std::string axis;
  std::string values;
  sweep->add_option("axis", axis, "eta0, s, n, alpha0 or omega0")->required();
  sweep->add_option("values", values, "Comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    std::optional<std::filesystem::path> file;
    if (flags.config) file = *flags.config;
    const auto config = cohlab::cli::resolve_config(file, flags.overrides);
    if (*propagator) return report(cohlab::cli::cmd_propagator(config));
    if (*channel) return report(cohlab::cli::cmd_channel(config));
    if (*figure) return report(cohlab::cli::cmd_figure(config, figure_id));
    return report(cohlab::cli::cmd_sweep(config, axis, cohlab::cli::parse_list(values, "values")));
  } catch (const cohlab::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
