#include <cmath>
#include <numbers>
#include <vector>

#include "cohlab/errors.hpp"
#include "cohlab/propagator.hpp"
#include "quadrature.hpp"

namespace cohlab {
namespace {

// PV \int_0^\infty y^s e^{-y} / (y - x) dy with the window (x - d, x + d)
// removed. The excised contribution is odd in d to leading order, so the
// Richardson table eliminates d, d^3, d^5, ...
double excised_integral(double s, double x, double d) {
  auto f = [s, x](double y) { return detail::power_exp(y, s) / (y - x); };
  return detail::integrate_endpoint_singular(f, 0.0, x - d) + detail::integrate_to_infinity(f, x + d);
}

double excision_principal_value(double s, double x) {
  constexpr int max_levels = 10;
  constexpr double tol = 1e-11;
  std::vector<std::vector<double>> table;
  double d = std::min(0.5 * x, 0.25);
  double last_change = 0.0;
  for (int k = 0; k < max_levels; ++k, d *= 0.5) {
    std::vector<double> row{excised_integral(s, x, d)};
    for (int j = 1; j <= k; ++j) {
      const double factor = std::pow(2.0, 2 * j - 1) - 1.0;
      row.push_back(row[j - 1] + (row[j - 1] - table[k - 1][j - 1]) / factor);
    }
    table.push_back(std::move(row));
    if (k >= 2) {
      last_change = std::abs(table[k][k] - table[k - 1][k - 1]);
      if (last_change <= tol * std::max(1.0, std::abs(table[k][k]))) return table[k][k];
    }
  }
  throw ConvergenceError("lamb_shift: excision extrapolation did not converge", last_change);
}

}  // namespace

ShiftedFrequency lamb_shift(const BathSpec& spec, double omega0, PrincipalValueMethod method) {
  if (!(omega0 > 0.0)) throw DomainError("lamb_shift: omega0 must lie inside the band (> 0)");
  if (spec.eta0() == 0.0) return {omega0};
  const double x = omega0 / spec.omega_c();
  double shift = 0.0;
  switch (method) {
    case PrincipalValueMethod::excision:
      shift = spec.eta_s() * excision_principal_value(spec.s(), x);
      break;
    case PrincipalValueMethod::subtraction:
      shift = level_shift(spec, x, SelfEnergyRoute::quadrature);
      break;
  }
  return {omega0 - spec.omega_c() * shift};
}

namespace {

std::complex<double> markov_factor(double omega0_prime, double rate, double t) {
  return std::exp(std::complex<double>(-0.5 * rate * t, -omega0_prime * t));
}

}  // namespace

std::complex<double> markov_u(const BathSpec& spec, double omega0, double t) {
  if (!(t >= 0.0)) throw DomainError("markov_u: t must be non-negative");
  const double w0p = lamb_shift(spec, omega0).omega0_prime;
  return markov_factor(w0p, spectral_density(spec, omega0), t);
}

PropagatorSolution solve_markov(const BathSpec& spec, double omega0, const TimeGrid& grid) {
  const double w0p = lamb_shift(spec, omega0).omega0_prime;
  const double rate = spectral_density(spec, omega0);
  std::vector<std::complex<double>> u(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) u[k] = markov_factor(w0p, rate, grid[k]);
  return PropagatorSolution{grid, std::move(u), PropagatorMethod::markov, {}, 0.0, 0.0};
}

}  // namespace cohlab
