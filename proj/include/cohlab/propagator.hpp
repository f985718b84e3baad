#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cohlab/bath.hpp"

namespace cohlab {

/// Ordered sample times starting at t = 0.
class TimeGrid {
public:
  enum class Layout { uniform, log_spaced, custom };

  /// `points` samples 0, h, ..., t_max with h = t_max / (points - 1).
  static TimeGrid uniform(double t_max, std::size_t points);

  /// 0 followed by `points - 1` log-spaced times from t_min to t_max.
  static TimeGrid log_spaced(double t_min, double t_max, std::size_t points);

  /// Validates: first sample 0, strictly increasing, last sample > 0.
  static TimeGrid from_samples(std::vector<double> samples);

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t k) const { return samples_[k]; }
  double t_max() const noexcept { return samples_.back(); }
  Layout layout() const noexcept { return layout_; }

  /// Step of a uniform grid; DomainError otherwise.
  double step() const;

private:
  TimeGrid(std::vector<double> samples, Layout layout);

  std::vector<double> samples_;
  Layout layout_;
};

enum class PropagatorMethod { volterra, laplace, markov };

std::string_view to_string(PropagatorMethod method);

/// Isolated zero of the Laplace denominator on the imaginary axis.
struct PoleRecord {
  std::complex<double> location;  ///< Laplace variable z = -i E (physical units)
  double frequency;               ///< E, the oscillation frequency of the bound term
  std::complex<double> residue;   ///< 1 / D'(z) of the denominator of uhat(z)
};

struct PropagatorSolution {
  TimeGrid grid;
  std::vector<std::complex<double>> u;
  PropagatorMethod method;
  std::vector<PoleRecord> poles;
  /// |sum of residues|: the long-time modulus of u, 0 without poles.
  double steady_modulus = 0.0;
  /// Volterra: final change between successive refinements.
  /// Laplace: |u(0) - 1| from the pole + branch-cut sum rule.
  double error_estimate = 0.0;
};

struct VolterraOptions {
  /// Largest internal step, in units of 1/omega_c.
  double max_step = 0.1;
  /// Refinement stops once successive extrapolated solutions differ by less
  /// than this in max norm.
  double tolerance = 1e-5;
  /// Number of step halvings allowed beyond the first pair.
  int refinement_budget = 6;
};

/// Solves du/dt + i w0 u + \int_0^t g(t - tau) u(tau) dtau = 0, u(0) = 1, on a
/// uniform grid with the implicit trapezoidal rule. Steps are halved until the
/// Romberg-extrapolated solution changes by less than `tolerance`;
/// ConvergenceError when the budget runs out.
PropagatorSolution solve_volterra(const BathSpec& spec, double omega0, const TimeGrid& grid,
                                  const VolterraOptions& options = {});

/// One fixed-step trapezoidal solve with `substeps` internal steps per grid
/// interval, without refinement. Exposed for convergence studies.
std::vector<std::complex<double>> volterra_fixed_step(const BathSpec& spec, double omega0,
                                                      const TimeGrid& grid, int substeps);

/// max_k |du/dt + i w0 u + \int g u| on a uniform grid, using fourth-order
/// finite differences and Simpson quadrature (independent of the trapezoidal
/// scheme). Interior points only.
double volterra_residual(const BathSpec& spec, double omega0, const TimeGrid& grid,
                         std::span<const std::complex<double>> u);

struct LaplaceOptions {
  /// Upper frequency cutoff of the branch-cut integral, units of omega_c.
  double omega_max = 50.0;
  /// L1 budget for the piecewise-quadratic interpolant of the cut density;
  /// bounds the branch-cut error uniformly in t.
  double tolerance = 1e-9;
  /// Allowed |integral beyond omega_max|.
  double tail_tolerance = 1e-8;
  /// Allowed |u(0) - 1|.
  double sum_rule_tolerance = 1e-3;
  SelfEnergyRoute route = SelfEnergyRoute::automatic;
};

/// u(t) = sum residues e^{z_p t} + (1/pi) \int_0^\infty Im{1/X(w)} e^{-i w t} dw,
/// X the inversion denominator. The cut integral uses Filon-type quadrature on
/// an adaptive frequency mesh; works on any grid.
PropagatorSolution solve_laplace(const BathSpec& spec, double omega0, const TimeGrid& grid,
                                 const LaplaceOptions& options = {});

/// Branch-cut density (1/pi) Im{1/X(w)} at w (units of omega_c).
double branch_cut_density(const BathSpec& spec, double omega0, double w,
                          SelfEnergyRoute route = SelfEnergyRoute::automatic);

/// Zeros of the denominator of uhat(z) on the imaginary axis outside the bath
/// band, with residues. Empty when there is no bound mode.
std::vector<PoleRecord> find_poles(const BathSpec& spec, double omega0,
                                   SelfEnergyRoute route = SelfEnergyRoute::automatic);

/// lim_{t -> infinity} |u(t)|: the modulus of the summed pole terms.
double steady_modulus(const BathSpec& spec, double omega0);

struct ShiftedFrequency {
  double omega0_prime;
};

enum class PrincipalValueMethod {
  excision,     ///< symmetric excision, radius extrapolated to zero
  subtraction,  ///< analytic subtraction of the pole
};

/// Weak-coupling frequency w0' = w0 - (1/2pi) PV \int_0^\infty J(w) / (w - w0) dw.
///
/// The sign and the 1/2pi follow from the exact Laplace denominator; see the
/// README for the comparison against the Volterra phase.
ShiftedFrequency lamb_shift(const BathSpec& spec, double omega0,
                            PrincipalValueMethod method = PrincipalValueMethod::excision);

/// e^{-(i w0' + J(w0)/2) t}.
std::complex<double> markov_u(const BathSpec& spec, double omega0, double t);

/// markov_u sampled on a grid.
PropagatorSolution solve_markov(const BathSpec& spec, double omega0, const TimeGrid& grid);

/// Cubic (four-point Lagrange) resampling of a uniform-grid solution onto
/// `target`, whose samples must lie within the source range.
std::vector<std::complex<double>> resample_cubic(const TimeGrid& source,
                                                 std::span<const std::complex<double>> values,
                                                 const TimeGrid& target);

}  // namespace cohlab
