#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cohlab {

/// Two-qubit density matrix in the ordered basis {|ee>, |eo>, |oe>, |oo>}
/// (n-fold repetition even/odd states when n_bits > 1).
struct TwoQubitState {
  Eigen::Matrix4cd rho;
  std::complex<double> alpha0;
  std::complex<double> u;
  double c;  ///< dephasing factor exp(-2|alpha0|^2 (1 - |u|^2)) of a single mode
  int n_bits = 1;
};

struct StateDiagnostics {
  double trace_error;        ///< |tr rho - 1|
  double hermiticity_error;  ///< max |rho - rho^dagger|
  double min_eigenvalue;
  double off_x_max;          ///< largest |entry| outside the X pattern
};

StateDiagnostics diagnose(const TwoQubitState& state);

/// DomainError unless trace (1e-10), Hermiticity (1e-12) and positivity (-1e-10) hold.
void require_valid(const TwoQubitState& state);

struct ChannelMetrics {
  double concurrence;
  double f_max;
  double fidelity;  ///< (2 f_max + 1) / 3
};

/// Evolved cluster-type entangled coherent state
///   (|a,a> + i|a,-a> + i|-a,a> + |-a,-a>) / sqrt(M),  M = 4(1 + e^{-4|a|^2}),
/// as the closed X-form matrix.
TwoQubitState cluster_state_density(std::complex<double> alpha0, std::complex<double> u);

/// The same state (or its n-fold repetition encoding) assembled term by term:
/// every element |s1 a, s2 a><s1' a, s2' a| goes through the single-mode map
/// on each of the 2n modes and is projected onto the even/odd basis with
/// coherent-state overlaps. Normalization is computed from the initial overlaps.
TwoQubitState cluster_state_density_generic(std::complex<double> alpha0, std::complex<double> u,
                                            int n = 1);

/// 2 a^2 b^2 / (1 + e^{-4|alpha0|^2}) max{0, c^2 + 2c - 1}.
double concurrence_closed(std::complex<double> alpha0, std::complex<double> u);

/// (c^2 - 2 a^2 b^2 (1 - c)^2 + 1) / (2 (1 + e^{-4|alpha0|^2})).
double fef_closed(std::complex<double> alpha0, std::complex<double> u);

/// Closed-form concurrence and f_max with the dephasing factor replaced by c
/// (a and b still follow from the damped amplitude alpha0 u).
ChannelMetrics closed_form_metrics(std::complex<double> alpha0, std::complex<double> u, double c);

/// max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}, l_i the eigenvalues of
/// rho (Y x Y) rho^* (Y x Y) in descending order.
double wootters_concurrence(const TwoQubitState& state);

/// Largest eigenvalue of Re(rho) in the basis {Phi+, i Phi-, i Psi+, Psi-}.
double fef_oracle(const TwoQubitState& state);

/// (2 f_max + 1) / 3; DomainError outside [0, 1].
double teleportation_fidelity(double f_max);

/// Closed-form metrics of the unencoded channel.
ChannelMetrics channel_metrics(std::complex<double> alpha0, std::complex<double> u);

}  // namespace cohlab
