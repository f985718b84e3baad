#include "cohlab/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cohlab/errors.hpp"
#include "cohlab/qubit.hpp"

namespace cohlab {

using cplx = std::complex<double>;

namespace {

constexpr cplx I(0.0, 1.0);

double cluster_norm(cplx alpha0, int n) { return 1.0 + std::exp(-4.0 * n * std::norm(alpha0)); }

// Magic basis as columns.
Eigen::Matrix4cd magic_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
  b(0, 0) = r;      b(3, 0) = r;
  b(0, 1) = I * r;  b(3, 1) = -I * r;
  b(1, 2) = I * r;  b(2, 2) = I * r;
  b(1, 3) = r;      b(2, 3) = -r;
  return b;
}

}  // namespace

StateDiagnostics diagnose(const TwoQubitState& state) {
  const Eigen::Matrix4cd& rho = state.rho;
  StateDiagnostics d{};
  d.trace_error = std::abs(rho.trace() - 1.0);
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::Matrix4cd herm = 0.5 * (rho + rho.adjoint());
  d.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(herm, Eigen::EigenvaluesOnly).eigenvalues()(0);
  d.off_x_max = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && r + c != 3) d.off_x_max = std::max(d.off_x_max, std::abs(rho(r, c)));
  return d;
}

void require_valid(const TwoQubitState& state) {
  const auto d = diagnose(state);
  if (!(d.trace_error <= 1e-10)) throw DomainError("two-qubit state: trace error " + std::to_string(d.trace_error));
  if (!(d.hermiticity_error <= 1e-12)) throw DomainError("two-qubit state: not Hermitian");
  if (!(d.min_eigenvalue >= -1e-10)) throw DomainError("two-qubit state: negative eigenvalue " + std::to_string(d.min_eigenvalue));
}

TwoQubitState cluster_state_density(cplx alpha0, cplx u) {
  const double c = dephasing_factor(alpha0, u);
  const auto [a, b] = EvenOddCoeffs::from_amplitude(alpha0 * u);
  const double a2 = a * a;
  const double b2 = b * b;
  const double scale = 1.0 / cluster_norm(alpha0, 1);  // 4 / M
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = a2 * a2 * (1.0 + c * c);
  rho(1, 1) = a2 * b2 * (1.0 - c * c);
  rho(2, 2) = rho(1, 1);
  rho(3, 3) = b2 * b2 * (1.0 + c * c);
  rho(0, 3) = 2.0 * I * c * a2 * b2;
  rho(3, 0) = -rho(0, 3);
  rho *= scale;
  return TwoQubitState{rho, alpha0, u, c, 1};
}

TwoQubitState cluster_state_density_generic(cplx alpha0, cplx u, int n) {
  if (n < 1) throw DomainError("cluster_state_density_generic: n must be positive");
  const cplx z = -I;
  const cplx zn = std::pow(z, n);
  const std::array<std::array<double, 2>, 4> branch{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  const std::array<cplx, 4> kappa{1.0, -zn, -zn, -zn * zn};

  // n-mode overlap <s' a|^n |s a>^n.
  auto overlap_n = [n](cplx bra, cplx ket) { return std::pow(overlap(bra, ket), n); };

  cplx norm = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      norm += kappa[i] * std::conj(kappa[j]) *
              overlap_n(branch[j][0] * alpha0, branch[i][0] * alpha0) *
              overlap_n(branch[j][1] * alpha0, branch[i][1] * alpha0);

  const cplx alpha_t = alpha0 * u;
  const double me = 2.0 * (1.0 + std::exp(-2.0 * n * std::norm(alpha_t)));
  const double mo = -2.0 * std::expm1(-2.0 * n * std::norm(alpha_t));
  // <e_n|amp>^n and <o_n|amp>^n; the odd projection is 0 at the vacuum.
  auto project = [&](double parity, cplx amp) -> cplx {
    const double m = parity > 0.0 ? me : mo;
    if (m == 0.0) return 0.0;
    return (overlap_n(alpha_t, amp) + parity * overlap_n(-alpha_t, amp)) / std::sqrt(m);
  };
  auto column = [&](cplx amp1, cplx amp2) {
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) v(k) = project(branch[k][0], amp1) * project(branch[k][1], amp2);
    return v;
  };

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      cplx pref = kappa[i] * std::conj(kappa[j]) / norm;
      cplx ket[2], bra[2];
      for (int m = 0; m < 2; ++m) {
        const auto e = evolve_element({1.0, branch[i][m] * alpha0, branch[j][m] * alpha0}, u);
        pref *= std::pow(e.prefactor, n);
        ket[m] = e.ket_amp;
        bra[m] = e.bra_amp;
      }
      rho += pref * column(ket[0], ket[1]) * column(bra[0], bra[1]).adjoint();
    }
  }
  return TwoQubitState{rho, alpha0, u, dephasing_factor(alpha0, u), n};
}

ChannelMetrics closed_form_metrics(cplx alpha0, cplx u, double c) {
  const auto [a, b] = EvenOddCoeffs::from_amplitude(alpha0 * u);
  const double a2b2 = a * a * b * b;
  const double norm = cluster_norm(alpha0, 1);
  const double conc = 2.0 * a2b2 / norm * std::max(0.0, c * c + 2.0 * c - 1.0);
  const double f = (c * c - 2.0 * a2b2 * (1.0 - c) * (1.0 - c) + 1.0) / (2.0 * norm);
  return ChannelMetrics{conc, f, teleportation_fidelity(std::clamp(f, 0.0, 1.0))};
}

double concurrence_closed(cplx alpha0, cplx u) {
  return closed_form_metrics(alpha0, u, dephasing_factor(alpha0, u)).concurrence;
}

double fef_closed(cplx alpha0, cplx u) {
  return closed_form_metrics(alpha0, u, dephasing_factor(alpha0, u)).f_max;
}

ChannelMetrics channel_metrics(cplx alpha0, cplx u) {
  return closed_form_metrics(alpha0, u, dephasing_factor(alpha0, u));
}

double wootters_concurrence(const TwoQubitState& state) {
  require_valid(state);
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  // Y x Y with Y = [[0, -i], [i, 0]] is real: antidiagonal (-1, 1, 1, -1).
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  // The spin-flip spectrum sqrt(eig(rho rho~)) equals the singular values of
  // sqrt(rho) (Y x Y) conj(sqrt(rho)). Taking square roots of eig(rho rho~)
  // directly turns 1e-16 rounding into 1e-8 errors at pure states; here the
  // rounding in the small eigenvalues of rho only enters at second order.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(state.rho);
  if (eig.info() != Eigen::Success) throw ConvergenceError("wootters_concurrence: eigen-solve failed", 0.0);
  const Eigen::Vector4d root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd sqrt_rho = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
  const Eigen::Matrix4cd m = sqrt_rho * yy * sqrt_rho.conjugate();
  const Eigen::Vector4d sigma = Eigen::JacobiSVD<Eigen::Matrix4cd>(m).singularValues();  // descending
  const double value = sigma(0) - sigma(1) - sigma(2) - sigma(3);
  return std::max(0.0, value);
}

double fef_oracle(const TwoQubitState& state) {
  require_valid(state);
  static const Eigen::Matrix4cd basis = magic_basis();
  const Eigen::Matrix4d real_part = (basis.adjoint() * state.rho * basis).real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(0.5 * (real_part + real_part.transpose()),
                                                       Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("fef_oracle: eigen-solve failed", 0.0);
  return solver.eigenvalues()(3);
}

double teleportation_fidelity(double f_max) {
  if (!(f_max >= 0.0 && f_max <= 1.0)) throw DomainError("teleportation_fidelity: f_max outside [0, 1]");
  return (2.0 * f_max + 1.0) / 3.0;
}

}  // namespace cohlab
