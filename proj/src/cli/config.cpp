#include "cohlab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cohlab/cli/csv.hpp"

namespace cohlab::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const Setting& setting, const std::string& why) {
  throw ConfigError(setting.origin + ": field '" + setting.key + "': " + why + " (got '" + setting.value + "')");
}

double to_double(const Setting& setting, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    fail(setting, "expected a number");
  }
  return value;
}

std::size_t to_count(const Setting& setting) {
  const auto text = trim(setting.value);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) fail(setting, "expected a non-negative integer");
  return value;
}

bool to_bool(const Setting& setting) {
  const auto text = trim(setting.value);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  fail(setting, "expected true or false");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += format_number(values[k]);
  }
  return out;
}

}  // namespace

std::string_view to_string(SolverChoice solver) {
  switch (solver) {
    case SolverChoice::volterra: return "volterra";
    case SolverChoice::laplace: return "laplace";
    case SolverChoice::both: return "both";
  }
  return "?";
}

double RunConfig::t_max_for(double eta) const {
  if (t_max) return *t_max;
  return eta < 0.1 ? 1e4 : 1e3;
}

void RunConfig::validate() const {
  auto bad = [](const std::string& what) { throw ConfigError("invalid configuration: " + what); };
  if (s.empty() || eta0.empty()) bad("s and eta0 need at least one value");
  for (double v : s) if (!(v > 0.0)) bad("s must be positive");
  for (double v : eta0) if (!(v >= 0.0)) bad("eta0 must be non-negative");
  if (!(omega0 > 0.0)) bad("omega0 must be positive");
  if (!(alpha0 > 0.0)) bad("alpha0 must be positive");
  if (!(omega_c > 0.0)) bad("omega_c must be positive");
  if (t_max && !(*t_max > 0.0)) bad("tmax must be positive");
  if (points < 2) bad("points must be at least 2");
  if (solver_points < 3) bad("solver_points must be at least 3");
  if (!(t_min > 0.0)) bad("t_min must be positive");
  for (double v : eta0) {
    if (log_output && !(t_min < t_max_for(v))) bad("t_min must be below tmax");
  }
  try {
    code.validate();
  } catch (const DomainError& e) {
    bad(e.what());
  }
}

std::vector<std::string> RunConfig::describe() const {
  std::vector<std::string> lines;
  auto add = [&](std::string_view key, const std::string& value) {
    lines.push_back(std::string(key) + " = " + value);
  };
  add("s", join(s));
  add("eta0", join(eta0));
  add("omega0", format_number(omega0));
  add("alpha0", format_number(alpha0));
  add("omega_c", format_number(omega_c));
  add("tmax", t_max ? format_number(*t_max) : std::string("auto"));
  add("points", std::to_string(points));
  add("solver_points", std::to_string(solver_points));
  add("t_min", format_number(t_min));
  add("log_output", log_output ? "true" : "false");
  add("solver", std::string(to_string(solver)));
  add("code", std::string(to_string(code.kind)));
  add("n", std::to_string(code.n));
  return lines;
}

std::vector<double> parse_list(std::string_view text, std::string_view field) {
  std::vector<double> values;
  const Setting setting{std::string(field), std::string(text), "list"};
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) fail(setting, "empty list entry");
    values.push_back(to_double(setting, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

std::vector<Setting> parse_settings(std::string_view text, std::string_view origin) {
  std::vector<Setting> settings;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const std::string where = std::string(origin) + ":" + std::to_string(line_no);
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(where + ": expected 'key = value', got '" + std::string(line) + "'");
      }
      const auto key = trim(line.substr(0, eq));
      if (key.empty()) throw ConfigError(where + ": missing key before '='");
      settings.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), where});
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return settings;
}

void apply(RunConfig& config, const Setting& setting) {
  const std::string& key = setting.key;
  if (key == "s" || key == "eta0") {
    std::vector<double> values;
    try {
      values = parse_list(setting.value, key);
    } catch (const ConfigError&) {
      fail(setting, "expected a number or comma-separated numbers");
    }
    (key == "s" ? config.s : config.eta0) = std::move(values);
  } else if (key == "omega0") {
    config.omega0 = to_double(setting, setting.value);
  } else if (key == "alpha0") {
    config.alpha0 = to_double(setting, setting.value);
  } else if (key == "omega_c") {
    config.omega_c = to_double(setting, setting.value);
  } else if (key == "tmax") {
    if (trim(setting.value) == "auto") config.t_max.reset();
    else config.t_max = to_double(setting, setting.value);
  } else if (key == "points") {
    config.points = to_count(setting);
  } else if (key == "solver_points") {
    config.solver_points = to_count(setting);
  } else if (key == "t_min") {
    config.t_min = to_double(setting, setting.value);
  } else if (key == "log_output") {
    config.log_output = to_bool(setting);
  } else if (key == "solver") {
    const auto v = trim(setting.value);
    if (v == "volterra") config.solver = SolverChoice::volterra;
    else if (v == "laplace") config.solver = SolverChoice::laplace;
    else if (v == "both") config.solver = SolverChoice::both;
    else fail(setting, "expected volterra, laplace or both");
  } else if (key == "code") {
    const auto v = trim(setting.value);
    if (v == "none") config.code.kind = CodeKind::none;
    else if (v == "phase") config.code.kind = CodeKind::phase_flip;
    else if (v == "bit") config.code.kind = CodeKind::bit_flip;
    else fail(setting, "expected none, phase or bit");
  } else if (key == "n") {
    const auto n = to_count(setting);
    if (n < 1 || n > 100000) fail(setting, "expected a positive integer");
    config.code.n = static_cast<int>(n);
  } else if (key == "out") {
    if (trim(setting.value).empty()) fail(setting, "empty path");
    config.out = std::string(trim(setting.value));
  } else {
    throw ConfigError(setting.origin + ": unknown field '" + key + "'");
  }
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& file,
                         const std::vector<Setting>& overrides) {
  RunConfig config;
  if (file) {
    std::ifstream in(*file, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + file->string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    for (const auto& setting : parse_settings(text.str(), file->string())) apply(config, setting);
  }
  for (const auto& setting : overrides) apply(config, setting);
  config.validate();
  return config;
}

}  // namespace cohlab::cli
