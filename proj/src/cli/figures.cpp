#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "cohlab/bath.hpp"
#include "cohlab/cli/commands.hpp"
#include "cohlab/cli/csv.hpp"
#include "internal.hpp"

namespace cohlab::cli {

namespace {

constexpr std::array<double, 3> exponents{0.5, 1.0, 3.0};
const std::map<double, std::string> styles{{0.5, "dashed"}, {1.0, "dot-dashed"}, {3.0, "solid"}};

struct Curve {
  std::string file;
  std::string label;
  std::string style;
};

// Physical parameters of every figure; grid and solver settings stay user-controlled.
RunConfig figure_config(const RunConfig& base, double s, double eta0, CodeConfig code) {
  RunConfig c = base;
  c.s = {s};
  c.eta0 = {eta0};
  c.omega0 = 0.1;
  c.alpha0 = 1.2;
  c.omega_c = 1.0;
  c.code = code;
  c.validate();
  return c;
}

void write_recipe(const std::filesystem::path& path, std::string_view id, const std::vector<std::string>& lines,
                  const std::vector<Curve>& curves) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << "# plot recipe for figure " << id << '\n';
  for (const auto& line : lines) out << line << '\n';
  out << "curves:\n";
  for (const auto& c : curves) out << "  " << c.file << " | " << c.label << " | " << c.style << '\n';
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

CommandResult spectral_figure(const RunConfig& base, std::string_view id, bool scaled) {
  CommandResult result;
  std::vector<Curve> curves;
  const double eta0 = 0.5;
  for (double s : exponents) {
    const BathSpec bath(s, eta0);
    const std::string file = "fig" + std::string(id) + "_s" + label(s) + ".csv";
    RunConfig c = figure_config(base, s, eta0, {});
    auto header = audit_header("figure " + std::string(id), c);
    header.push_back(scaled ? "J with eta_s = eta0 (e/s)^s" : "J with eta_s = eta0");
    CsvWriter csv(base.out / file, header, {"omega", "J"});
    constexpr int samples = 1001;
    for (int k = 0; k < samples; ++k) {
      const double w = 10.0 * k / (samples - 1);
      double j = spectral_density(bath, w);
      if (!scaled) j *= eta0 / bath.eta_s();
      csv.row(std::array{w, j});
    }
    csv.close();
    result.files.push_back(base.out / file);
    curves.push_back({file, "s = " + label(s), styles.at(s)});
  }
  const auto recipe = base.out / ("figure" + std::string(id) + ".plot.txt");
  write_recipe(recipe, id,
               {"x: omega | linear | omega / omega_c", "y: J | linear | J(omega)",
                std::string("title: spectral density, eta0 = 0.5, ") + (scaled ? "scaled" : "unscaled")},
               curves);
  result.files.push_back(recipe);
  return result;
}

struct Series {
  double s;
  double eta0;
  CodeConfig code;
};

std::string series_file(std::string_view id, const Series& x) {
  std::string name = "fig" + std::string(id) + "_s" + label(x.s) + "_eta" + label(x.eta0);
  if (x.code.kind != CodeKind::none) name += "_" + std::string(to_string(x.code.kind)) + std::to_string(x.code.n);
  return name + ".csv";
}

std::string series_label(const Series& x) {
  std::string text = "s = " + label(x.s) + ", eta0 = " + label(x.eta0);
  if (x.code.kind == CodeKind::none) return text + ", no code";
  return text + ", " + std::to_string(x.code.n) + "-bit " + (x.code.kind == CodeKind::phase_flip ? "phase-flip" : "bit-flip");
}

// One propagator per bath, shared by every series on that bath.
CommandResult time_figure(const RunConfig& base, std::string_view id, const std::vector<Series>& series, bool channel) {
  CommandResult result;
  std::vector<std::pair<double, double>> baths;
  for (const auto& x : series) {
    if (std::find(baths.begin(), baths.end(), std::pair{x.s, x.eta0}) == baths.end()) baths.emplace_back(x.s, x.eta0);
  }
  std::vector<std::optional<Trajectory>> trajs(baths.size());
  std::vector<std::string> errors(baths.size());
  run_parallel(baths.size(), [&](std::size_t k) {
    try {
      trajs[k] = compute_trajectory(figure_config(base, baths[k].first, baths[k].second, {}), baths[k].first, baths[k].second);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });

  std::vector<Curve> curves;
  for (const auto& x : series) {
    const auto k = static_cast<std::size_t>(std::find(baths.begin(), baths.end(), std::pair{x.s, x.eta0}) - baths.begin());
    const std::string file = series_file(id, x);
    if (!trajs[k]) {
      result.failures.push_back(file + ": " + errors[k]);
      continue;
    }
    if (trajs[k]->discrepancy && !(*trajs[k]->discrepancy <= solver_agreement_tolerance)) {
      result.failures.push_back(file + ": solvers disagree by " + format_number(*trajs[k]->discrepancy));
    }
    const RunConfig c = figure_config(base, x.s, x.eta0, x.code);
    const auto header = audit_header("figure " + std::string(id), c);
    if (channel) write_channel_csv(base.out / file, header, c, *trajs[k]);
    else write_propagator_csv(base.out / file, header, *trajs[k]);
    result.files.push_back(base.out / file);
    std::string style = styles.at(x.s);
    if (x.code.kind != CodeKind::none || id == "4" || id == "5" || id == "6") {
      style = "series n = " + std::to_string(x.code.n);
    }
    curves.push_back({file, series_label(x), style});
  }

  std::vector<std::string> lines{"x: t | log | omega_c t"};
  if (channel) {
    lines.push_back("panel C: y = C | linear | concurrence, range [0, 1]");
    lines.push_back("panel F: y = F | linear | teleportation fidelity; reference line F = 2/3 (classical limit)");
  } else {
    const std::string column = base.solver == SolverChoice::volterra ? "abs_u_volterra" : "abs_u_laplace";
    lines.push_back("y: " + column + " | linear | |u(t)|, range [0, 1]");
  }
  lines.push_back("panels: one per distinct (s, eta0) in the curve list unless noted");
  const auto recipe = base.out / ("figure" + std::string(id) + ".plot.txt");
  write_recipe(recipe, id, lines, curves);
  result.files.push_back(recipe);
  return result;
}

std::vector<Series> coded(double eta0, CodeKind kind, std::initializer_list<int> ns) {
  std::vector<Series> out;
  for (double s : exponents) {
    for (int n : ns) out.push_back({s, eta0, n == 1 ? CodeConfig{} : CodeConfig{kind, n}});
  }
  return out;
}

}  // namespace

CommandResult cmd_figure(const RunConfig& config, std::string_view id) {
  if (id == "1a") return spectral_figure(config, id, false);
  if (id == "1b") return spectral_figure(config, id, true);
  if (id == "2a" || id == "2b") {
    const double eta0 = id == "2a" ? 0.01 : 0.5;
    std::vector<Series> series;
    for (double s : exponents) series.push_back({s, eta0, {}});
    return time_figure(config, id, series, false);
  }
  if (id == "3") {
    std::vector<Series> series;
    for (double eta0 : {0.01, 0.5})
      for (double s : exponents) series.push_back({s, eta0, {}});
    return time_figure(config, id, series, true);
  }
  if (id == "4") return time_figure(config, id, coded(0.01, CodeKind::phase_flip, {1, 3, 9, 101}), true);
  if (id == "5") return time_figure(config, id, coded(0.5, CodeKind::phase_flip, {1, 3, 9, 101}), true);
  if (id == "6") return time_figure(config, id, coded(0.5, CodeKind::bit_flip, {1, 3, 6, 9}), true);
  throw ConfigError("figure: unknown id '" + std::string(id) + "' (expected 1a, 1b, 2a, 2b, 3, 4, 5 or 6)");
}

}  // namespace cohlab::cli
