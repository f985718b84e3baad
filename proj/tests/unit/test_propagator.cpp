#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cohlab/bath.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/propagator.hpp"
#include "oracles.hpp"

using namespace cohlab;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {
double max_abs(const PropagatorSolution& sol) {
  double m = 0.0;
  for (auto v : sol.u) m = std::max(m, std::abs(v));
  return m;
}
}  // namespace

TEST_CASE("TimeGrid construction") {
  const auto uni = TimeGrid::uniform(10.0, 11);
  CHECK(uni.size() == 11);
  CHECK(uni[0] == 0.0);
  CHECK(uni.t_max() == 10.0);
  CHECK(uni.step() == doctest::Approx(1.0));
  const auto lg = TimeGrid::log_spaced(0.01, 100.0, 6);
  CHECK(lg[0] == 0.0);
  CHECK(lg[1] == doctest::Approx(0.01));
  CHECK(lg[2] == doctest::Approx(0.1));
  CHECK(lg.t_max() == doctest::Approx(100.0));
  CHECK_THROWS_AS(lg.step(), DomainError);
  CHECK_THROWS_AS(TimeGrid::from_samples({0.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(TimeGrid::from_samples({0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(TimeGrid::from_samples({0.0}), DomainError);
  CHECK_THROWS_AS(TimeGrid::uniform(-1.0, 10), DomainError);
}

TEST_CASE("free evolution") {
  const BathSpec free(1.0, 0.0);
  const auto grid = TimeGrid::uniform(50.0, 101);
  const auto sol = solve_volterra(free, 0.1, grid);
  CHECK(sol.u[0] == cplx(1.0, 0.0));
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK(std::abs(sol.u[k] - std::exp(cplx(0, -0.1 * grid[k]))) < 1e-10);
  CHECK(lamb_shift(free, 0.1).omega0_prime == 0.1);
  const auto poles = find_poles(free, 0.1);
  REQUIRE(poles.size() == 1);
  CHECK(poles[0].residue == cplx(1.0, 0.0));
  CHECK(steady_modulus(free, 0.1) == 1.0);
  const auto lap = solve_laplace(free, 0.1, TimeGrid::log_spaced(0.01, 1e4, 50));
  for (std::size_t k = 0; k < lap.grid.size(); ++k)
    CHECK(std::abs(lap.u[k] - std::exp(cplx(0, -0.1 * lap.grid[k]))) < 1e-12);
}

TEST_CASE("Volterra solution satisfies the integro-differential equation") {
  for (double s : {0.5, 1.0, 3.0}) {
    for (double eta0 : {0.01, 0.5}) {
      CAPTURE(s);
      CAPTURE(eta0);
      const BathSpec b(s, eta0);
      const auto grid = TimeGrid::uniform(20.0, 2001);
      const auto sol = solve_volterra(b, 0.1, grid);
      CHECK(sol.u[0] == cplx(1.0, 0.0));
      CHECK(max_abs(sol) <= 1.0 + 1e-9);
      CHECK(volterra_residual(b, 0.1, grid, sol.u) <= 1e-6);
    }
  }
}

// Same trapezoidal recursion with the memory sum written out term by term.
static std::vector<cplx> direct_trapezoid(const BathSpec& b, double w0, double h, std::size_t steps) {
  const double amp = b.eta_s() * std::tgamma(b.s() + 1.0);
  std::vector<cplx> g(steps + 1), u(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) g[k] = amp * std::pow(cplx(1.0, h * double(k)), -(b.s() + 1.0));
  u[0] = 1.0;
  const cplx i(0, 1);
  auto memory = [&](std::size_t n) {  // trapezoid of \int_0^{nh} g(nh - s) u(s) ds
    if (n == 0) return cplx(0.0);
    cplx sum = 0.5 * (g[n] * u[0] + g[0] * u[n]);
    for (std::size_t j = 1; j < n; ++j) sum += g[n - j] * u[j];
    return h * sum;
  };
  for (std::size_t n = 0; n < steps; ++n) {
    const cplx fn = -i * w0 * u[n] - memory(n);
    // u[n+1] enters linearly: solve the implicit trapezoid step by two probes.
    auto residual = [&](cplx guess) {
      u[n + 1] = guess;
      return guess - u[n] - 0.5 * h * (fn - i * w0 * guess - memory(n + 1));
    };
    const cplx r0 = residual(0.0), r1 = residual(1.0);
    u[n + 1] = -r0 / (r1 - r0);
  }
  return u;
}

TEST_CASE("fast history sum reproduces the direct trapezoidal recursion") {
  for (double s : {0.5, 3.0}) {
    const BathSpec b(s, 0.5);
    const auto grid = TimeGrid::uniform(150.0, 1501);
    const auto fast = volterra_fixed_step(b, 0.1, grid, 1);
    const auto slow = direct_trapezoid(b, 0.1, 0.1, 1500);
    double d = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) d = std::max(d, std::abs(fast[k] - slow[k]));
    CAPTURE(s);
    CHECK(d < 1e-12);
  }
}

TEST_CASE("Volterra refinement converges at second order") {
  const BathSpec b(1.0, 0.5);
  const auto grid = TimeGrid::uniform(10.0, 11);
  const auto u1 = volterra_fixed_step(b, 0.1, grid, 8);
  const auto u2 = volterra_fixed_step(b, 0.1, grid, 16);
  const auto u4 = volterra_fixed_step(b, 0.1, grid, 32);
  double d12 = 0, d24 = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    d12 = std::max(d12, std::abs(u1[k] - u2[k]));
    d24 = std::max(d24, std::abs(u2[k] - u4[k]));
  }
  CHECK(d12 / d24 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("Volterra and Laplace agree for all six configurations") {
  const auto grid = TimeGrid::uniform(200.0, 2001);
  for (double s : {0.5, 1.0, 3.0}) {
    for (double eta0 : {0.01, 0.5}) {
      CAPTURE(s);
      CAPTURE(eta0);
      const BathSpec b(s, eta0);
      const auto v = solve_volterra(b, 0.1, grid);
      const auto l = solve_laplace(b, 0.1, grid);
      double d = 0;
      for (std::size_t k = 0; k < grid.size(); ++k) d = std::max(d, std::abs(v.u[k] - l.u[k]));
      CHECK(d <= 1e-3);
      CHECK(std::abs(l.u[0] - 1.0) <= 1e-3);
      CHECK(l.error_estimate <= 1e-3);
      CHECK(max_abs(l) <= 1.0 + 1e-9);
    }
  }
}

// Largest amount by which |u| climbs back above its running minimum.
static double recovery(const PropagatorSolution& sol, double t_from, double t_to) {
  double low = 2.0, worst = 0.0;
  for (std::size_t k = 0; k < sol.grid.size(); ++k) {
    if (sol.grid[k] < t_from || sol.grid[k] > t_to) continue;
    const double a = std::abs(sol.u[k]);
    worst = std::max(worst, a - low);
    low = std::min(low, a);
  }
  return worst;
}

// Strict monotone decay holds only while the pole-free exponential dominates.
// For s = 1/2 the algebraic t^-(s+1) branch-cut tail overtakes it near
// t ~ 300 and the two beat; for s = 3 the early slip is followed by a small
// partial recovery (t ~ 2..7). Both are real and show up in both solvers.
TEST_CASE("weak coupling: no bound mode, decay") {
  const auto grid = TimeGrid::log_spaced(0.01, 1e4, 400);
  for (double s : {0.5, 1.0, 3.0}) {
    const BathSpec b(s, 0.01);
    CAPTURE(s);
    CHECK(find_poles(b, 0.1).empty());
    CHECK(steady_modulus(b, 0.1) == 0.0);
    const auto sol = solve_laplace(b, 0.1, grid);
    CHECK(sol.poles.empty());
    CHECK(sol.steady_modulus == 0.0);
    CHECK(recovery(sol, 0.0, 1e4) < 1e-3);
  }
  const auto half = solve_laplace(BathSpec(0.5, 0.01), 0.1, grid);
  CHECK(recovery(half, 0.0, 300.0) <= 1e-12);
  CHECK(recovery(half, 300.0, 1e4) > 1e-5);
  CHECK(recovery(solve_laplace(BathSpec(1.0, 0.01), 0.1, grid), 0.0, 1e4) <= 1e-12);
  const auto three = solve_laplace(BathSpec(3.0, 0.01), 0.1, grid);
  CHECK(recovery(three, 0.0, 2.0) <= 1e-12);
  CHECK(recovery(three, 0.0, 20.0) > 1e-4);
}

TEST_CASE("the s = 3 partial recovery is present in the time-domain solution") {
  const BathSpec b(3.0, 0.01);
  const auto grid = TimeGrid::uniform(10.0, 1001);
  const auto v = solve_volterra(b, 0.1, grid);
  const auto l = solve_laplace(b, 0.1, grid);
  CHECK(recovery(v, 0.0, 10.0) > 1e-4);
  CHECK(recovery(v, 0.0, 10.0) == doctest::Approx(recovery(l, 0.0, 10.0)).epsilon(0.05));
}

TEST_CASE("strong coupling, s = 3: one bound mode sets the plateau") {
  const BathSpec b(3.0, 0.5);
  const auto poles = find_poles(b, 0.1);
  REQUIRE(poles.size() == 1);
  const auto& p = poles.front();
  CHECK(p.frequency < 0.0);
  CHECK(p.location.real() == 0.0);
  CHECK(p.location.imag() == doctest::Approx(-p.frequency));
  CHECK(std::abs(p.residue) > 0.0);
  CHECK(std::abs(p.residue) < 1.0);

  // The pole is a real zero of D(E) = w0 - E - shift(E) below the band.
  CHECK(std::abs(0.1 - p.frequency - level_shift(b, p.frequency)) < 1e-12);
  // Residue = 1 / (1 + shift'(E)); shift' checked by finite differences.
  const double slope = oracle::derivative([&](double x) { return level_shift(b, x); }, p.frequency, 1e-3);
  CHECK(std::abs(p.residue - 1.0 / (1.0 + slope)) < 1e-6);

  const double plateau = steady_modulus(b, 0.1);
  CHECK(plateau == doctest::Approx(std::abs(p.residue)).epsilon(1e-14));

  const auto grid = TimeGrid::uniform(1000.0, 2001);
  const auto v = solve_volterra(b, 0.1, grid);
  CHECK(std::abs(std::abs(v.u.back()) - plateau) < 1e-3);

  // Sharp drop, then a recovery towards the plateau.
  const auto it = std::min_element(v.u.begin(), v.u.end(), [](cplx a, cplx c) { return std::abs(a) < std::abs(c); });
  CHECK(std::abs(*it) < plateau);
  CHECK(it != v.u.end() - 1);
}

TEST_CASE("bound mode appears once the coupling pulls the level below the band") {
  // Threshold: w0 = eta_s Gamma(s), i.e. D(0-) = 0.
  for (double s : {0.5, 1.0, 3.0}) {
    const double eta_s_star = 0.1 / std::tgamma(s);
    const double eta0_star = eta_s_star / std::pow(std::numbers::e / s, s);
    CAPTURE(s);
    CHECK(find_poles(BathSpec(s, 0.9 * eta0_star), 0.1).empty());
    CHECK(find_poles(BathSpec(s, 1.1 * eta0_star), 0.1).size() == 1);
  }
}

TEST_CASE("Laplace sum rule and pole bookkeeping") {
  const auto grid = TimeGrid::log_spaced(0.01, 1e4, 200);
  for (double s : {0.5, 1.0, 3.0}) {
    const BathSpec b(s, 0.5);
    const auto sol = solve_laplace(b, 0.1, grid);
    CAPTURE(s);
    CHECK(std::abs(sol.u[0] - 1.0) <= 1e-3);
    CHECK(sol.error_estimate == doctest::Approx(std::abs(sol.u[0] - 1.0)));
    cplx sum = 0;
    for (const auto& p : sol.poles) sum += p.residue;
    CHECK(sol.steady_modulus == doctest::Approx(std::abs(sum)));
    // Late times: the branch cut has died away.
    CHECK(std::abs(std::abs(sol.u.back()) - sol.steady_modulus) < 1e-3);
  }
}

TEST_CASE("branch-cut density integrates with the residues to unity") {
  for (double s : {0.5, 1.0, 3.0}) {
    const BathSpec b(s, 0.5);
    double residues = 0;
    for (const auto& p : find_poles(b, 0.1)) residues += p.residue.real();
    auto f = [&](double w) { return branch_cut_density(b, 0.1, w); };
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    const double head = ts.integrate(f, 0.0, 0.2, 1e-12);
    const double weight = head + oracle::panels(f, 0.2, 60.0, 0.05);
    CAPTURE(s);
    CHECK(std::abs(weight + residues - 1.0) < 1e-6);
  }
}

TEST_CASE("Lamb shift: two principal-value methods agree") {
  for (double s : {0.5, 1.0, 3.0}) {
    for (double eta0 : {0.01, 0.5}) {
      const BathSpec b(s, eta0);
      const double a = lamb_shift(b, 0.1, PrincipalValueMethod::excision).omega0_prime;
      const double c = lamb_shift(b, 0.1, PrincipalValueMethod::subtraction).omega0_prime;
      CAPTURE(s);
      CAPTURE(eta0);
      CHECK(std::abs(a - c) <= 1e-6 * std::abs(c));
      // w0' = w0 - shift(w0).
      CHECK(c == doctest::Approx(0.1 - level_shift(b, 0.1)).epsilon(1e-8));
    }
  }
}

TEST_CASE("Markov approximation") {
  const BathSpec b(1.0, 0.01);
  CHECK(markov_u(b, 0.1, 0.0) == cplx(1.0, 0.0));
  const double gamma = spectral_density(b, 0.1);
  for (double t : {1.0, 10.0, 300.0})
    CHECK(std::abs(markov_u(b, 0.1, t)) == doctest::Approx(std::exp(-gamma * t / 2.0)).epsilon(1e-13));
  // The shift only rotates the phase.
  const double w0p = lamb_shift(b, 0.1).omega0_prime;
  CHECK(std::arg(markov_u(b, 0.1, 3.0) * std::exp(cplx(0, w0p * 3.0))) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Markov tracks the exact solution at weak coupling") {
  // At eta0 = 0.01 the effective coupling eta_s = 0.027 already moves the
  // resonance far enough that |u| drifts ~25% from the Markov envelope by
  // t = 100; at eta0 = 0.001 the weak-coupling picture holds.
  const BathSpec b(1.0, 0.001);
  const auto grid = TimeGrid::uniform(100.0, 1001);
  const auto v = solve_volterra(b, 0.1, grid);
  const cplx m = markov_u(b, 0.1, 100.0);
  CHECK(std::abs(v.u.back()) == doctest::Approx(std::abs(m)).epsilon(0.02));
  // Phase sign check: the exact phase follows w0 - shift, not w0 + shift.
  const double shift = level_shift(b, 0.1);
  const double exact_phase = std::arg(v.u.back() * std::exp(cplx(0, 0.1 * 100.0)));
  CHECK(exact_phase == doctest::Approx(shift * 100.0).epsilon(0.05));
}

TEST_CASE("cubic resampling") {
  const auto src = TimeGrid::uniform(10.0, 201);
  std::vector<cplx> vals;
  for (double t : src.samples()) vals.push_back(std::exp(cplx(-0.1, -0.7) * t));
  const auto dst = TimeGrid::log_spaced(0.01, 10.0, 50);
  const auto out = resample_cubic(src, vals, dst);
  for (std::size_t k = 0; k < dst.size(); ++k)
    CHECK(std::abs(out[k] - std::exp(cplx(-0.1, -0.7) * dst[k])) < 1e-6);
  CHECK_THROWS_AS(resample_cubic(src, vals, TimeGrid::uniform(20.0, 3)), DomainError);
}
