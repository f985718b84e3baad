#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cohlab/errors.hpp"
#include "cohlab/propagator.hpp"
#include "quadrature.hpp"
#include <string>

namespace cohlab {
namespace {

using cplx = std::complex<double>;

// A quadratic panel [a, a + width] with samples at both ends and the midpoint.
struct Panel {
  double a;
  double width;
  double f0;
  double f1;
  double f2;
};

// m_k(theta) = \int_0^1 y^k e^{-i theta y} dy for k = 0, 1, 2.
struct Moments {
  cplx m0, m1, m2;
};

Moments filon_moments(double theta) {
  if (std::abs(theta) < 1.0) {
    Moments m{0.0, 0.0, 0.0};
    cplx term = 1.0;  // (-i theta)^j / j!
    const cplx step(0.0, -theta);
    for (int j = 0; j < 40; ++j) {
      m.m0 += term / static_cast<double>(j + 1);
      m.m1 += term / static_cast<double>(j + 2);
      m.m2 += term / static_cast<double>(j + 3);
      term *= step / static_cast<double>(j + 1);
      if (std::abs(term) < 1e-18) break;
    }
    return m;
  }
  const cplx e = std::polar(1.0, -theta);
  const cplx inv = 1.0 / cplx(0.0, -theta);
  Moments m{};
  m.m0 = (e - 1.0) * inv;
  m.m1 = (e - m.m0) * inv;
  m.m2 = (e - 2.0 * m.m1) * inv;
  return m;
}

// Resonances: sign changes of Re X inside the band, refined by bisection.
std::vector<double> resonance_breakpoints(const BathSpec& spec, double omega0, double w_max,
                                          SelfEnergyRoute route) {
  auto re_x = [&](double w) {
    return inversion_denominator(spec, omega0, w * spec.omega_c(), route).real();
  };
  std::vector<double> points;
  constexpr int scan = 1500;
  const double lo = std::log(1e-8);
  const double hi = std::log(w_max);
  double w_prev = 1e-8;
  double r_prev = re_x(w_prev);
  for (int k = 1; k <= scan; ++k) {
    const double w = std::exp(lo + (hi - lo) * k / scan);
    const double r = re_x(w);
    if ((r > 0.0) != (r_prev > 0.0)) {
      double a = w_prev;
      double b = w;
      double ra = r_prev;
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double rm = re_x(m);
        if ((rm > 0.0) == (ra > 0.0)) {
          a = m;
          ra = rm;
        } else {
          b = m;
        }
      }
      const double center = 0.5 * (a + b);
      const double im = std::abs(inversion_denominator(spec, omega0, center * spec.omega_c(), route).imag());
      const double dw = 1e-6 * std::max(center, 1e-6);
      const double slope = std::abs(re_x(center + dw) - re_x(center - dw)) / (2.0 * dw);
      const double width = slope > 0.0 ? std::max(im / slope, 1e-14) : center;
      points.push_back(center);
      for (double off = width / 8.0; off < w_max; off *= 2.0) {
        if (center - off > 0.0) points.push_back(center - off);
        if (center + off < w_max) points.push_back(center + off);
      }
    }
    w_prev = w;
    r_prev = r;
  }
  return points;
}

// Adaptive piecewise-quadratic mesh for the cut density. The L1 distance
// between density and interpolant bounds the quadrature error for every t
// because |e^{-iwt}| = 1.
std::vector<Panel> build_mesh(const BathSpec& spec, double omega0, const LaplaceOptions& options,
                              double& l1_error) {
  const double w_max = options.omega_max;
  auto f = [&](double w) {
    return w <= 0.0 ? 0.0 : branch_cut_density(spec, omega0, w, options.route);
  };

  std::vector<double> breaks{0.0};
  for (int k = 0; k <= 80; ++k) breaks.push_back(std::exp(std::log(1e-8) * (1.0 - k / 80.0)));
  for (double w = 1.25; w < w_max; w += 0.25) breaks.push_back(w);
  breaks.push_back(w_max);
  const auto resonances = resonance_breakpoints(spec, omega0, w_max, options.route);
  breaks.insert(breaks.end(), resonances.begin(), resonances.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return y - x <= 1e-15 * std::max(1.0, y); }),
               breaks.end());

  struct Pending {
    double a, b, fa, fm, fb;
    int depth;
  };
  std::vector<Panel> panels;
  std::vector<Pending> stack;
  l1_error = 0.0;
  const double density_tol = options.tolerance / w_max;
  constexpr std::size_t max_panels = 2'000'000;

  for (std::size_t k = breaks.size() - 1; k-- > 0;) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    stack.push_back({a, b, f(a), f(0.5 * (a + b)), f(b), 0});
  }
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const double width = p.b - p.a;
    const double q1 = p.a + 0.25 * width;
    const double q3 = p.a + 0.75 * width;
    const double f1 = f(q1);
    const double f3 = f(q3);
    // Quadratic through (0, fa), (1/2, fm), (1, fb) at y = 1/4 and 3/4.
    const double p1 = 0.375 * p.fa + 0.75 * p.fm - 0.125 * p.fb;
    const double p3 = -0.125 * p.fa + 0.75 * p.fm + 0.375 * p.fb;
    const double err = 0.5 * width * (std::abs(f1 - p1) + std::abs(f3 - p3));
    // Relative floor: the closed forms carry ~1e-13 relative rounding noise.
    const double scale = std::max({std::abs(p.fa), std::abs(p.fm), std::abs(p.fb)});
    const bool tiny = width <= 1e-14 * std::max(1.0, p.b) || p.depth >= 60;
    if (err <= (density_tol + 1e-12 * scale) * width || tiny) {
      panels.push_back({p.a, width, p.fa, p.fm, p.fb});
      l1_error += err;
      continue;
    }
    if (panels.size() + stack.size() > max_panels) {
      throw ConvergenceError("solve_laplace: frequency mesh exceeded panel budget near w = " +
                                 std::to_string(p.a),
                             err);
    }
    const double m = 0.5 * (p.a + p.b);
    stack.push_back({m, p.b, p.fm, f3, p.fb, p.depth + 1});
    stack.push_back({p.a, m, p.fa, f1, p.fm, p.depth + 1});
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  return panels;
}

cplx branch_cut_value(const std::vector<Panel>& panels, double tau) {
  cplx acc = 0.0;
  for (const Panel& p : panels) {
    const Moments m = filon_moments(p.width * tau);
    const cplx w0 = 2.0 * m.m2 - 3.0 * m.m1 + m.m0;
    const cplx w1 = 4.0 * (m.m1 - m.m2);
    const cplx w2 = 2.0 * m.m2 - m.m1;
    acc += std::polar(p.width, -p.a * tau) * (p.f0 * w0 + p.f1 * w1 + p.f2 * w2);
  }
  return acc;
}

}  // namespace

double branch_cut_density(const BathSpec& spec, double omega0, double w, SelfEnergyRoute route) {
  // J ~ e^{-w} has underflowed; the shift formulas lose meaning long before.
  if (w > 700.0) return 0.0;
  const cplx x = inversion_denominator(spec, omega0, w * spec.omega_c(), route);
  return (1.0 / x).imag() / std::numbers::pi;
}

PropagatorSolution solve_laplace(const BathSpec& spec, double omega0, const TimeGrid& grid,
                                 const LaplaceOptions& options) {
  if (options.route == SelfEnergyRoute::closed_form && !spec.has_closed_form()) {
    throw UnsupportedError("solve_laplace: no hand-derived denominator for s = " + std::to_string(spec.s()));
  }
  const double wc = spec.omega_c();
  std::vector<PoleRecord> poles = find_poles(spec, omega0, options.route);

  std::vector<cplx> u(grid.size());
  std::vector<Panel> panels;
  double tail = 0.0;
  if (spec.eta0() > 0.0) {
    double l1_error = 0.0;
    panels = build_mesh(spec, omega0, options, l1_error);
    auto density = [&](double w) { return branch_cut_density(spec, omega0, w, options.route); };
    tail = detail::integrate_to_infinity(density, options.omega_max, 1e-6);
    if (!(std::abs(tail) <= options.tail_tolerance)) {
      std::ostringstream msg;
      msg << "solve_laplace: branch-cut tail beyond omega_max = " << options.omega_max
          << " is " << tail;
      throw ConvergenceError(msg.str(), std::abs(tail));
    }
  }

  auto evaluate = [&](double t) {
    const double tau = t * wc;
    cplx value = panels.empty() ? cplx(0.0) : branch_cut_value(panels, tau);
    for (const auto& pole : poles) value += pole.residue * std::exp(pole.location * t);
    return value;
  };
  for (std::size_t k = 0; k < grid.size(); ++k) u[k] = evaluate(grid[k]);

  const double sum_rule = std::abs(u[0] - 1.0);
  if (!(sum_rule <= options.sum_rule_tolerance)) {
    throw ConvergenceError("solve_laplace: pole + branch-cut weights do not sum to one", sum_rule);
  }

  cplx residue_sum = 0.0;
  for (const auto& pole : poles) residue_sum += pole.residue;
  return PropagatorSolution{grid, std::move(u), PropagatorMethod::laplace, std::move(poles),
                            std::abs(residue_sum), sum_rule};
}

}  // namespace cohlab
