#pragma once

#include <complex>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohlab/cli/config.hpp"
#include "cohlab/propagator.hpp"

namespace cohlab::cli {

/// Files written and tolerance failures of one command. Exit code is 0 iff
/// there were no failures.
struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> failures;

  int exit_code() const noexcept { return failures.empty() ? 0 : 1; }
  void merge(CommandResult other);
};

/// Largest |u_volterra - u_laplace| accepted when both solvers run.
inline constexpr double solver_agreement_tolerance = 1e-3;

/// u(t) on the output axis for one bath.
struct Trajectory {
  TimeGrid grid;
  std::vector<std::complex<double>> u;  ///< Laplace when available, else Volterra
  std::optional<std::vector<std::complex<double>>> volterra;
  std::optional<std::vector<std::complex<double>>> laplace;
  std::optional<double> discrepancy;    ///< max |volterra - laplace| when both ran
};

/// Log-spaced (0, t_min .. t_max) or uniform output axis, in units of 1/omega_c.
TimeGrid output_grid(const RunConfig& config, double eta0);

/// Runs the configured solver(s). Volterra runs on a uniform grid of
/// solver_points samples and is resampled; Laplace is evaluated directly.
Trajectory compute_trajectory(const RunConfig& config, double s, double eta0);

/// Worker cap: COHLAB_THREADS if set to a positive integer, else hardware concurrency.
std::size_t worker_count();

/// Calls task(k) for k < count on up to worker_count() threads.
void run_parallel(std::size_t count, const std::function<void(std::size_t)>& task);

CommandResult cmd_propagator(const RunConfig& config);
CommandResult cmd_channel(const RunConfig& config);

/// Known ids: 1a 1b 2a 2b 3 4 5 6. ConfigError otherwise.
CommandResult cmd_figure(const RunConfig& config, std::string_view id);

/// axis in {eta0, s, n, alpha0, omega0}; ConfigError otherwise.
CommandResult cmd_sweep(const RunConfig& config, std::string_view axis, const std::vector<double>& values);

/// Header lines shared by every emitted file.
std::vector<std::string> audit_header(std::string_view command, const RunConfig& config);

/// Short numeric label for file names ("0.5", "1", "0.01").
std::string label(double value);

}  // namespace cohlab::cli
