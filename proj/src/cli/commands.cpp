#include "cohlab/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "cohlab/cli/csv.hpp"
#include "cohlab/codes.hpp"
#include "cohlab/qubit.hpp"
#include "internal.hpp"

#ifndef COHLAB_VERSION
#define COHLAB_VERSION "dev"
#endif

namespace cohlab::cli {

using cplx = std::complex<double>;

void CommandResult::merge(CommandResult other) {
  files.insert(files.end(), other.files.begin(), other.files.end());
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string label(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

std::vector<std::string> audit_header(std::string_view command, const RunConfig& config) {
  std::vector<std::string> lines{"cohlab " COHLAB_VERSION, "command = " + std::string(command)};
  for (auto& line : config.describe()) lines.push_back(std::move(line));
  return lines;
}

TimeGrid output_grid(const RunConfig& config, double eta0) {
  const double t_max = config.t_max_for(eta0) / config.omega_c;
  if (config.log_output) return TimeGrid::log_spaced(config.t_min / config.omega_c, t_max, config.points);
  return TimeGrid::uniform(t_max, config.points);
}

Trajectory compute_trajectory(const RunConfig& config, double s, double eta0) {
  const BathSpec bath(s, eta0, config.omega_c);
  const double omega0 = config.omega0 * config.omega_c;
  const TimeGrid grid = output_grid(config, eta0);
  Trajectory out{grid, {}, std::nullopt, std::nullopt, std::nullopt};
  if (config.solver != SolverChoice::volterra) {
    out.laplace = solve_laplace(bath, omega0, grid).u;
  }
  if (config.solver != SolverChoice::laplace) {
    const auto uniform = TimeGrid::uniform(grid.t_max(), config.solver_points);
    const auto solution = solve_volterra(bath, omega0, uniform);
    out.volterra = resample_cubic(uniform, solution.u, grid);
  }
  out.u = out.laplace ? *out.laplace : *out.volterra;
  if (out.laplace && out.volterra) {
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) worst = std::max(worst, std::abs((*out.laplace)[k] - (*out.volterra)[k]));
    out.discrepancy = worst;
  }
  return out;
}

std::size_t worker_count() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COHLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) cap = static_cast<std::size_t>(v);
  }
  return cap;
}

void run_parallel(std::size_t count, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(count, worker_count());
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) {
          try {
            task(k);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

std::string bath_tag(double s, double eta0) { return "s" + label(s) + "_eta" + label(eta0); }

// |u| <= 1 exactly; the solvers may overshoot by their tolerance.
cplx physical(cplx u) { return std::abs(u) > 1.0 ? u / std::abs(u) : u; }

struct Bath {
  double s;
  double eta0;
};

std::vector<Bath> baths_of(const RunConfig& config) {
  std::vector<Bath> out;
  for (double s : config.s)
    for (double eta0 : config.eta0) out.push_back({s, eta0});
  return out;
}

// Runs compute_trajectory for every bath in parallel; failures are recorded per bath.
std::vector<std::optional<Trajectory>> trajectories(const RunConfig& config, const std::vector<Bath>& baths,
                                                    CommandResult& result) {
  std::vector<std::optional<Trajectory>> out(baths.size());
  std::vector<std::string> errors(baths.size());
  run_parallel(baths.size(), [&](std::size_t k) {
    try {
      out[k] = compute_trajectory(config, baths[k].s, baths[k].eta0);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < baths.size(); ++k) {
    if (!errors[k].empty()) {
      result.failures.push_back(bath_tag(baths[k].s, baths[k].eta0) + ": " + errors[k]);
    } else if (out[k]->discrepancy && !(*out[k]->discrepancy <= solver_agreement_tolerance)) {
      result.failures.push_back(bath_tag(baths[k].s, baths[k].eta0) +
                                ": solvers disagree by " + format_number(*out[k]->discrepancy));
    }
  }
  return out;
}

}  // namespace

ChannelRow channel_row(const RunConfig& config, cplx u) {
  u = physical(u);
  const cplx alpha0 = config.alpha0;
  const double p_e = phase_error_prob(alpha0, u);
  switch (config.code.kind) {
    case CodeKind::phase_flip:
      return {corrected_channel_metrics(alpha0, u, config.code.n), p_e, corrected_c(config.code.n, p_e)};
    case CodeKind::bit_flip:
      return {bitflip_metrics(config.code.n, alpha0, u), p_e, bitflip_p_e(config.code.n, alpha0, u)};
    case CodeKind::none:
      break;
  }
  return {channel_metrics(alpha0, u), p_e, 0.0};
}

std::vector<std::string> channel_columns(const RunConfig& config) {
  std::vector<std::string> cols{"t", "C", "f_max", "F", "p_e"};
  if (config.code.kind == CodeKind::phase_flip) cols.push_back("c_prime");
  if (config.code.kind == CodeKind::bit_flip) cols.push_back("p_e_n");
  return cols;
}

void write_propagator_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                          const Trajectory& traj) {
  std::vector<std::string> cols{"t"};
  std::vector<const std::vector<cplx>*> series;
  if (traj.volterra) {
    for (const char* c : {"re_u_volterra", "im_u_volterra", "abs_u_volterra"}) cols.emplace_back(c);
    series.push_back(&*traj.volterra);
  }
  if (traj.laplace) {
    for (const char* c : {"re_u_laplace", "im_u_laplace", "abs_u_laplace"}) cols.emplace_back(c);
    series.push_back(&*traj.laplace);
  }
  CsvWriter csv(path, header, cols);
  std::vector<double> row;
  for (std::size_t k = 0; k < traj.grid.size(); ++k) {
    row.assign(1, traj.grid[k]);
    for (const auto* u : series) {
      row.push_back((*u)[k].real());
      row.push_back((*u)[k].imag());
      row.push_back(std::abs((*u)[k]));
    }
    csv.row(row);
  }
  if (traj.discrepancy) csv.comment("max_discrepancy = " + format_number(*traj.discrepancy));
  csv.close();
}

void write_channel_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                       const RunConfig& config, const Trajectory& traj) {
  CsvWriter csv(path, header, channel_columns(config));
  const bool extra = config.code.kind != CodeKind::none;
  std::vector<double> row;
  for (std::size_t k = 0; k < traj.grid.size(); ++k) {
    const auto r = channel_row(config, traj.u[k]);
    row = {traj.grid[k], r.metrics.concurrence, r.metrics.f_max, r.metrics.fidelity, r.p_e};
    if (extra) row.push_back(r.extra);
    csv.row(row);
  }
  if (traj.discrepancy) csv.comment("max_discrepancy = " + format_number(*traj.discrepancy));
  csv.close();
}

CommandResult cmd_propagator(const RunConfig& config) {
  CommandResult result;
  const auto baths = baths_of(config);
  const auto trajs = trajectories(config, baths, result);
  for (std::size_t k = 0; k < baths.size(); ++k) {
    if (!trajs[k]) continue;
    const auto path = config.out / ("propagator_" + bath_tag(baths[k].s, baths[k].eta0) + ".csv");
    RunConfig one = config;
    one.s = {baths[k].s};
    one.eta0 = {baths[k].eta0};
    write_propagator_csv(path, audit_header("propagator", one), *trajs[k]);
    result.files.push_back(path);
  }
  return result;
}

CommandResult cmd_channel(const RunConfig& config) {
  CommandResult result;
  const auto baths = baths_of(config);
  const auto trajs = trajectories(config, baths, result);
  for (std::size_t k = 0; k < baths.size(); ++k) {
    if (!trajs[k]) continue;
    std::string name = "channel_" + bath_tag(baths[k].s, baths[k].eta0);
    if (config.code.kind != CodeKind::none) {
      name += "_" + std::string(to_string(config.code.kind)) + std::to_string(config.code.n);
    }
    const auto path = config.out / (name + ".csv");
    RunConfig one = config;
    one.s = {baths[k].s};
    one.eta0 = {baths[k].eta0};
    write_channel_csv(path, audit_header("channel", one), one, *trajs[k]);
    result.files.push_back(path);
  }
  return result;
}

CommandResult cmd_sweep(const RunConfig& config, std::string_view axis, const std::vector<double>& values) {
  static constexpr std::string_view axes[] = {"eta0", "s", "n", "alpha0", "omega0"};
  if (std::find(std::begin(axes), std::end(axes), axis) == std::end(axes)) {
    throw ConfigError("sweep: unknown axis '" + std::string(axis) + "' (expected eta0, s, n, alpha0 or omega0)");
  }
  if (values.empty()) throw ConfigError("sweep: no values given");
  if (axis != "s" && config.s.size() != 1) throw ConfigError("sweep: give a single s when sweeping " + std::string(axis));
  if (axis != "eta0" && config.eta0.size() != 1) throw ConfigError("sweep: give a single eta0 when sweeping " + std::string(axis));
  if (axis == "n" && config.code.kind == CodeKind::none) throw ConfigError("sweep: axis n needs --code phase or --code bit");

  // One configuration per value; invalid values surface before any work starts.
  std::vector<RunConfig> configs;
  for (double v : values) {
    RunConfig c = config;
    const Setting setting{std::string(axis), format_number(v), "sweep value"};
    if (axis == "n" && (v != std::floor(v) || v < 1.0)) throw ConfigError("sweep: n must be a positive integer, got " + format_number(v));
    apply(c, axis == "n" ? Setting{"n", std::to_string(static_cast<long>(v)), "sweep value"} : setting);
    c.validate();
    configs.push_back(std::move(c));
  }

  CommandResult result;
  // n only changes the code, so the propagator is shared across values.
  const bool shared = axis == "n";
  std::vector<std::optional<Trajectory>> trajs(configs.size());
  std::vector<std::string> errors(configs.size());
  run_parallel(shared ? 1 : configs.size(), [&](std::size_t k) {
    try {
      trajs[k] = compute_trajectory(configs[k], configs[k].s[0], configs[k].eta0[0]);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });
  if (shared) {
    for (std::size_t k = 1; k < configs.size(); ++k) {
      trajs[k] = trajs[0];
      errors[k] = errors[0];
    }
  }

  std::vector<std::string> cols{"value", "t", "abs_u", "C", "f_max", "F", "p_e"};
  if (config.code.kind == CodeKind::phase_flip) cols.push_back("c_prime");
  if (config.code.kind == CodeKind::bit_flip) cols.push_back("p_e_n");
  auto header = audit_header("sweep", config);
  header.push_back("axis = " + std::string(axis));
  std::string joined;
  for (double v : values) joined += (joined.empty() ? "" : ",") + format_number(v);
  header.push_back("values = " + joined);

  const auto path = config.out / ("sweep_" + std::string(axis) + ".csv");
  CsvWriter csv(path, header, cols);
  std::vector<double> row;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    if (!trajs[k]) {
      result.failures.push_back(std::string(axis) + "=" + format_number(values[k]) + ": " + errors[k]);
      continue;
    }
    const auto& traj = *trajs[k];
    if (traj.discrepancy && !(*traj.discrepancy <= solver_agreement_tolerance)) {
      result.failures.push_back(std::string(axis) + "=" + format_number(values[k]) + ": solvers disagree by " +
                                format_number(*traj.discrepancy));
    }
    for (std::size_t j = 0; j < traj.grid.size(); ++j) {
      const auto r = channel_row(configs[k], traj.u[j]);
      row = {values[k], traj.grid[j], std::abs(traj.u[j]), r.metrics.concurrence, r.metrics.f_max, r.metrics.fidelity, r.p_e};
      if (config.code.kind != CodeKind::none) row.push_back(r.extra);
      csv.row(row);
    }
    if (traj.discrepancy) csv.comment("max_discrepancy[" + format_number(values[k]) + "] = " + format_number(*traj.discrepancy));
  }
  csv.close();
  result.files.push_back(path);
  return result;
}

}  // namespace cohlab::cli
