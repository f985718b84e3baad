#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohlab/codes.hpp"
#include "cohlab/errors.hpp"

namespace cohlab::cli {

enum class SolverChoice { volterra, laplace, both };

std::string_view to_string(SolverChoice solver);

/// Bad configuration text or flag value; the message names the origin
/// (file:line or flag) and the offending field.
class ConfigError : public Error {
public:
  using Error::Error;
};

struct RunConfig {
  std::vector<double> s{1.0};
  std::vector<double> eta0{0.01};
  double omega0 = 0.1;
  double alpha0 = 1.2;
  double omega_c = 1.0;
  /// Defaults to 1e4 for weak coupling (eta0 < 0.1) and 1e3 otherwise.
  std::optional<double> t_max;
  std::size_t points = 400;          ///< output samples
  std::size_t solver_points = 20000;  ///< uniform Volterra grid before resampling
  double t_min = 0.01;               ///< first nonzero time of the log axis
  bool log_output = true;
  SolverChoice solver = SolverChoice::laplace;
  CodeConfig code;
  std::filesystem::path out = ".";

  double t_max_for(double eta0) const;

  /// ConfigError when any field is out of range.
  void validate() const;

  /// "key = value" lines covering every field, in a fixed order.
  std::vector<std::string> describe() const;
};

/// One key/value assignment and where it came from.
struct Setting {
  std::string key;
  std::string value;
  std::string origin;  ///< "file:line" or "--flag"
};

/// Parses flat `key = value` text. '#' starts a comment; blank lines are skipped.
std::vector<Setting> parse_settings(std::string_view text, std::string_view origin);

/// Applies one setting; ConfigError names the origin and field on failure.
void apply(RunConfig& config, const Setting& setting);

/// Defaults, then the file (if any), then the overrides, in that order.
RunConfig resolve_config(const std::optional<std::filesystem::path>& file,
                         const std::vector<Setting>& overrides);

/// Comma-separated list of numbers.
std::vector<double> parse_list(std::string_view text, std::string_view field);

}  // namespace cohlab::cli
