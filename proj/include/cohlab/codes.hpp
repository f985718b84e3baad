#pragma once

#include <complex>
#include <string_view>

#include "cohlab/channel.hpp"

namespace cohlab {

enum class CodeKind { none, phase_flip, bit_flip };

std::string_view to_string(CodeKind kind);

struct CodeConfig {
  CodeKind kind = CodeKind::none;
  int n = 1;

  /// DomainError unless n >= 1, and n odd for the phase-flip code.
  void validate() const;
};

/// Probability that at most (n-1)/2 of n phase flips occur:
///   sum_{k <= (n-1)/2} C(n,k) (1 - p_e)^{n-k} p_e^k.
/// Terms are formed in log space and summed with compensation.
double phase_success_prob(int n, double p_e);

/// c' = 2 p_s - 1.
double corrected_c(int n, double p_e);

/// Unencoded closed forms with c replaced by corrected_c(n, p_e(t)). The
/// amplitude damping (a, b) is untouched by the code.
ChannelMetrics corrected_channel_metrics(std::complex<double> alpha0, std::complex<double> u, int n);

/// (1 - exp(-2n(|alpha0|^2 - |alpha_t|^2))) / 2.
double bitflip_p_e(int n, std::complex<double> alpha0, std::complex<double> u);

/// Closed-form density matrix of the n-fold repetition-encoded cluster state
/// in {|e_n e_n>, |e_n o_n>, |o_n e_n>, |o_n o_n>}: dense for even n, X-form for odd n.
TwoQubitState bitflip_density(int n, std::complex<double> alpha0, std::complex<double> u);

/// C = 8 a_n^2 b_n^2 / M_n max{0, c^{2n} + 2c^n - 1} and the even/odd-n f_max.
ChannelMetrics bitflip_metrics(int n, std::complex<double> alpha0, std::complex<double> u);

}  // namespace cohlab
