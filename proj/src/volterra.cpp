#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "cohlab/errors.hpp"
#include "cohlab/propagator.hpp"
#include "cohlab/specfun.hpp"

namespace cohlab {
namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

// Kernel in units of omega_c: g(tau)/omega_c^2 at tau = k h, k = 0..n.
Eigen::VectorXcd sampled_kernel(const BathSpec& spec, double h, std::size_t n) {
  const double amplitude = spec.eta_s() * specfun::gamma(spec.s() + 1.0);
  const double power = -(spec.s() + 1.0);
  Eigen::VectorXcd g(static_cast<Eigen::Index>(n + 1));
  for (std::size_t k = 0; k <= n; ++k) {
    g[static_cast<Eigen::Index>(k)] = amplitude * std::pow(cplx(1.0, h * static_cast<double>(k)), power);
  }
  return g;
}

// Causal history sums acc[m] = sum_{j=1}^{m-1} g[m-j] u[j], filled in while u
// is being produced. Divide and conquer: once u[lo..mid] is known its effect on
// acc[mid+1..hi] is one FFT convolution; small blocks are summed directly.
// Cost O(N log^2 N) instead of O(N^2).
class History {
 public:
  History(const Eigen::VectorXcd& g, std::vector<cplx>& u, std::vector<cplx>& acc)
      : g_(g), u_(u), acc_(acc) {}

  template <class Step>
  void run(std::size_t lo, std::size_t hi, Step& step) {
    if (hi - lo < kDirect) {
      for (std::size_t m = lo; m <= hi; ++m) {
        cplx sum = 0.0;
        for (std::size_t j = lo; j < m; ++j) sum += g_[static_cast<Eigen::Index>(m - j)] * u_[j];
        acc_[m] += sum;
        step(m);
      }
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    run(lo, mid, step);
    spread(lo, mid, hi);
    run(mid + 1, hi, step);
  }

 private:
  static constexpr std::size_t kDirect = 64;

  // acc[m] += sum_{j=lo}^{mid} g[m-j] u[j] for m in (mid, hi]. Lags run 1..hi-lo,
  // so a circular transform of length >= hi-lo leaves the needed outputs unaliased.
  void spread(std::size_t lo, std::size_t mid, std::size_t hi) {
    const std::size_t lags = hi - lo;
    std::size_t n = 1;
    while (n < lags) n <<= 1;
    const std::vector<cplx>& kernel = kernel_spectrum(lags, n);
    std::vector<cplx> a(n, 0.0), spec;
    std::copy(u_.begin() + static_cast<std::ptrdiff_t>(lo), u_.begin() + static_cast<std::ptrdiff_t>(mid + 1), a.begin());
    fft_.fwd(spec, a);
    for (std::size_t k = 0; k < n; ++k) spec[k] *= kernel[k];
    fft_.inv(a, spec);
    for (std::size_t m = mid + 1; m <= hi; ++m) acc_[m] += a[m - lo - 1];
  }

  const std::vector<cplx>& kernel_spectrum(std::size_t lags, std::size_t n) {
    auto [it, fresh] = kernels_.try_emplace({lags, n});
    if (fresh) {
      std::vector<cplx> b(n, 0.0);
      for (std::size_t d = 0; d < lags; ++d) b[d] = g_[static_cast<Eigen::Index>(d + 1)];
      fft_.fwd(it->second, b);
    }
    return it->second;
  }

  const Eigen::VectorXcd& g_;
  std::vector<cplx>& u_;
  std::vector<cplx>& acc_;
  Eigen::FFT<double> fft_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<cplx>> kernels_;
};

// Implicit trapezoidal rule for u' = -i w0 u - \int_0^t g(t-s) u(s) ds with the
// memory integral also on the trapezoidal rule. The scheme is linear in the
// new value, so each step is solved exactly. Dimensionless time.
std::vector<cplx> trapezoid_solve(const BathSpec& spec, double w0, double h, std::size_t steps) {
  const Eigen::VectorXcd g = sampled_kernel(spec, h, steps);
  std::vector<cplx> u(steps + 1, 0.0), acc(steps + 1, 0.0);
  u[0] = 1.0;
  cplx force = -I * w0;  // u'(0); the memory integral vanishes at t = 0
  const cplx denom = 1.0 + 0.5 * h * (I * w0 + 0.5 * h * g[0]);

  auto step = [&](std::size_t m) {
    const cplx known = 0.5 * g[static_cast<Eigen::Index>(m)] * u[0] + acc[m];
    u[m] = (u[m - 1] + 0.5 * h * force - 0.5 * h * h * known) / denom;
    force = -I * w0 * u[m] - h * (known + 0.5 * g[0] * u[m]);
  };
  if (steps > 0) {
    History history(g, u, acc);
    history.run(1, steps, step);
  }
  return u;
}

std::vector<cplx> at_grid(const std::vector<cplx>& fine, std::size_t points, int substeps) {
  std::vector<cplx> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    out[k] = fine[k * static_cast<std::size_t>(substeps)];
  }
  return out;
}

double max_difference(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

// One Romberg column: the trapezoidal error expands in even powers of h, so
// the order-j correction between adjacent rows removes the h^(2j) term.
std::vector<cplx> romberg_step(const std::vector<cplx>& coarse, const std::vector<cplx>& fine, int order) {
  const double f = std::pow(4.0, order);
  std::vector<cplx> out(coarse.size());
  for (std::size_t k = 0; k < coarse.size(); ++k) out[k] = (f * fine[k] - coarse[k]) / (f - 1.0);
  return out;
}

}  // namespace

std::vector<cplx> volterra_fixed_step(const BathSpec& spec, double omega0, const TimeGrid& grid,
                                      int substeps) {
  if (substeps < 1) throw DomainError("volterra_fixed_step: substeps must be >= 1");
  const double wc = spec.omega_c();
  const double h = grid.step() * wc / substeps;
  const std::size_t steps = (grid.size() - 1) * static_cast<std::size_t>(substeps);
  return at_grid(trapezoid_solve(spec, omega0 / wc, h, steps), grid.size(), substeps);
}

PropagatorSolution solve_volterra(const BathSpec& spec, double omega0, const TimeGrid& grid,
                                  const VolterraOptions& options) {
  if (!(options.max_step > 0.0)) throw DomainError("solve_volterra: max_step must be positive");
  const double step = grid.step() * spec.omega_c();
  int substeps = std::max(1, static_cast<int>(std::ceil(step / options.max_step - 1e-9)));

  // row[j] holds the order-j extrapolation at the current step size.
  std::vector<std::vector<cplx>> row{volterra_fixed_step(spec, omega0, grid, substeps)};
  double change = 0.0;
  for (int level = 0; level <= options.refinement_budget; ++level) {
    substeps *= 2;
    std::vector<std::vector<cplx>> next{volterra_fixed_step(spec, omega0, grid, substeps)};
    for (std::size_t j = 1; j <= row.size(); ++j)
      next.push_back(romberg_step(row[j - 1], next[j - 1], static_cast<int>(j)));
    change = max_difference(next.back(), row.back());
    row = std::move(next);
    if (change < options.tolerance) {
      std::vector<cplx> best = std::move(row.back());
      best[0] = 1.0;
      return PropagatorSolution{grid, std::move(best), PropagatorMethod::volterra, {}, 0.0, change};
    }
  }
  throw ConvergenceError("solve_volterra: step halving did not stabilise within the refinement budget",
                         change);
}

double volterra_residual(const BathSpec& spec, double omega0, const TimeGrid& grid,
                         std::span<const cplx> u) {
  const std::size_t n = grid.size();
  if (u.size() != n) throw DomainError("volterra_residual: value count does not match grid");
  if (n < 5) throw DomainError("volterra_residual: need at least five samples");
  const double wc = spec.omega_c();
  const double h = grid.step() * wc;
  const double w0 = omega0 / wc;
  const Eigen::VectorXcd g = sampled_kernel(spec, h, n - 1);

  // Simpson on [0, t_k] for even k; odd k takes Simpson up to k-3 plus the 3/8 rule.
  auto memory = [&](std::size_t k) {
    auto term = [&](std::size_t j) { return g[static_cast<Eigen::Index>(k - j)] * u[j]; };
    cplx acc = 0.0;
    std::size_t simpson_end = k;
    if (k % 2 == 1) {
      simpson_end = k - 3;
      acc += 3.0 * h / 8.0 * (term(k - 3) + 3.0 * term(k - 2) + 3.0 * term(k - 1) + term(k));
    }
    if (simpson_end > 0) {
      cplx s = term(0) + term(simpson_end);
      for (std::size_t j = 1; j < simpson_end; ++j) s += (j % 2 == 1 ? 4.0 : 2.0) * term(j);
      acc += h / 3.0 * s;
    }
    return acc;
  };

  double worst = 0.0;
  for (std::size_t k = 3; k + 2 < n; ++k) {
    const cplx derivative = (-u[k + 2] + 8.0 * u[k + 1] - 8.0 * u[k - 1] + u[k - 2]) / (12.0 * h);
    const cplx r = derivative + I * w0 * u[k] + memory(k);
    worst = std::max(worst, std::abs(r) * wc);
  }
  return worst;
}

}  // namespace cohlab
