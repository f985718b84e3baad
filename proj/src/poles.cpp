#include <cmath>
#include <sstream>

#include "cohlab/errors.hpp"
#include "cohlab/propagator.hpp"

namespace cohlab {
namespace {

constexpr double scan_depth = 50.0;   // units of omega_c
constexpr int scan_points = 600;

}  // namespace

std::vector<PoleRecord> find_poles(const BathSpec& spec, double omega0, SelfEnergyRoute route) {
  const double wc = spec.omega_c();
  const double w0 = omega0 / wc;

  // Uncoupled mode: the whole amplitude sits in a single undamped term.
  if (spec.eta0() == 0.0) {
    return {PoleRecord{{0.0, -omega0}, omega0, 1.0}};
  }

  // On z = -iE (E real, below the band) the denominator is i f(E) with
  // f(E) = w0 - E - shift(E), strictly decreasing in E.
  auto f = [&](double e) { return w0 - e - level_shift(spec, e, route); };

  std::vector<double> scan;
  scan.reserve(scan_points + 1);
  scan.push_back(0.0);
  const double lo = std::log(1e-10);
  const double hi = std::log(scan_depth);
  for (int k = 0; k < scan_points; ++k) {
    scan.push_back(-std::exp(lo + (hi - lo) * k / (scan_points - 1)));
  }
  // Beyond the scan the free term dominates: f(E) ~ -E for E -> -infinity.
  if (w0 > scan_depth) scan.push_back(-2.0 * w0);

  std::vector<PoleRecord> poles;
  double e_prev = scan[0];
  double f_prev = f(e_prev);
  for (std::size_t k = 1; k < scan.size(); ++k) {
    const double e_next = scan[k];
    const double f_next = f(e_next);
    if (!std::isfinite(f_next)) {
      std::ostringstream msg;
      msg << "find_poles: non-finite denominator while scanning [" << e_next << ", " << e_prev << "]";
      throw ConvergenceError(msg.str(), 0.0);
    }
    if ((f_prev > 0.0) != (f_next > 0.0) && f_prev != 0.0) {
      double a = e_next;  // more negative end
      double b = e_prev;
      double fa = f_next;
      for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm > 0.0) == (fa > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      if ((b - a) > 1e-10 * std::max(1.0, std::abs(a))) {
        std::ostringstream msg;
        msg << "find_poles: bisection failed to bracket root in [" << e_next << ", " << e_prev << "]";
        throw ConvergenceError(msg.str(), b - a);
      }
      const double e = 0.5 * (a + b);
      // uhat = 1/D, D(z) = i f(E) with z = -iE, so D'(z) = -f'(E) = 1 + shift'(E).
      const double slope = e < 0.0 ? level_shift_slope(spec, e, route) : 0.0;
      const double residue = 1.0 / (1.0 + slope);
      poles.push_back(PoleRecord{{0.0, -e * wc}, e * wc, residue});
    }
    e_prev = e_next;
    f_prev = f_next;
  }
  return poles;
}

double steady_modulus(const BathSpec& spec, double omega0) {
  std::complex<double> sum = 0.0;
  for (const auto& pole : find_poles(spec, omega0)) sum += pole.residue;
  return std::abs(sum);
}

}  // namespace cohlab
