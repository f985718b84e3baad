#include "cohlab/codes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/binomial.hpp>

#include "cohlab/errors.hpp"
#include "cohlab/qubit.hpp"

namespace cohlab {

using cplx = std::complex<double>;

namespace {

void require_phase_code(int n) {
  if (n < 1) throw DomainError("phase-flip code: n must be positive");
  if (n % 2 == 0) throw DomainError("phase-flip code: n must be odd, got " + std::to_string(n));
}

// M_n / 4.
double encoded_norm(int n, cplx alpha0) {
  return n % 2 == 0 ? 1.0 : 1.0 + std::exp(-4.0 * n * std::norm(alpha0));
}

cplx i_pow(int n) {
  static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[n % 4];
}

}  // namespace

std::string_view to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::none: return "none";
    case CodeKind::phase_flip: return "phase";
    case CodeKind::bit_flip: return "bit";
  }
  return "?";
}

void CodeConfig::validate() const {
  if (n < 1) throw DomainError("code: n must be positive");
  if (kind == CodeKind::phase_flip) require_phase_code(n);
}

double phase_success_prob(int n, double p_e) {
  require_phase_code(n);
  if (!(p_e >= 0.0 && p_e < 1.0)) throw DomainError("phase_success_prob: p_e must lie in [0, 1)");
  if (p_e == 0.0) return 1.0;
  const double log_p = std::log(p_e);
  const double log_q = std::log1p(-p_e);
  // log C(n, k) from the correctly rounded coefficient while it fits in a
  // double; lgamma beyond (its error grows with the argument).
  auto log_binom = [n](int k) {
    if (n <= 1000) return std::log(boost::math::binomial_coefficient<double>(n, k));
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  };
  // Sum the smaller side: for p_e < 1/2 the failure tail k > (n-1)/2, so a
  // success probability near 1 keeps full absolute accuracy.
  const bool tail = p_e < 0.5;
  const int lo = tail ? (n + 1) / 2 : 0;
  const int hi = tail ? n : (n - 1) / 2;
  double sum = 0.0;
  double comp = 0.0;  // Neumaier compensation
  for (int k = lo; k <= hi; ++k) {
    const double term = std::exp(log_binom(k) + (n - k) * log_q + k * log_p);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  const double total = sum + comp;
  return std::clamp(tail ? 1.0 - total : total, 0.0, 1.0);
}

double corrected_c(int n, double p_e) { return 2.0 * phase_success_prob(n, p_e) - 1.0; }

ChannelMetrics corrected_channel_metrics(cplx alpha0, cplx u, int n) {
  return closed_form_metrics(alpha0, u, corrected_c(n, phase_error_prob(alpha0, u)));
}

double bitflip_p_e(int n, cplx alpha0, cplx u) {
  if (n < 1) throw DomainError("bitflip_p_e: n must be positive");
  if (std::abs(u) > 1.0 + 1e-12) throw DomainError("bitflip_p_e: |u| must not exceed 1");
  return -0.5 * std::expm1(-2.0 * n * std::norm(alpha0) * (1.0 - std::norm(u)));
}

TwoQubitState bitflip_density(int n, cplx alpha0, cplx u) {
  if (n < 1) throw DomainError("bitflip_density: n must be positive");
  const double c = dephasing_factor(alpha0, u);
  const double cn = std::pow(c, n);
  const auto [a, b] = EvenOddCoeffs::from_amplitude(alpha0 * u, n);
  const cplx in = i_pow(n);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  if (n % 2 == 0) {
    const double a2b2 = a * a * b * b;
    const cplx p = -in * a * a * a * b * cn;
    const cplx q = in * a * b * b * b * cn;
    rho << a * a * a * a, p, p, -a2b2 * cn * cn,
           p, a2b2, a2b2 * cn * cn, q,
           p, a2b2 * cn * cn, a2b2, q,
           -a2b2 * cn * cn, q, q, b * b * b * b;
  } else {
    const double a2b2 = a * a * b * b;
    rho(0, 0) = a * a * a * a * (1.0 + cn * cn);
    rho(1, 1) = a2b2 * (1.0 - cn * cn);
    rho(2, 2) = rho(1, 1);
    rho(3, 3) = b * b * b * b * (1.0 + cn * cn);
    rho(0, 3) = 2.0 * in * a2b2 * cn;
    rho(3, 0) = -rho(0, 3);
    rho /= encoded_norm(n, alpha0);
  }
  return TwoQubitState{rho, alpha0, u, c, n};
}

ChannelMetrics bitflip_metrics(int n, cplx alpha0, cplx u) {
  if (n < 1) throw DomainError("bitflip_metrics: n must be positive");
  const double cn = std::pow(dephasing_factor(alpha0, u), n);
  const auto [a, b] = EvenOddCoeffs::from_amplitude(alpha0 * u, n);
  const double a2 = a * a;
  const double b2 = b * b;
  const double norm = encoded_norm(n, alpha0);
  const double conc = 2.0 * a2 * b2 / norm * std::max(0.0, cn * cn + 2.0 * cn - 1.0);
  double f = 0.0;
  if (n % 2 == 0) {
    const double d = a2 - b2;
    f = 0.25 * (1.0 + 4.0 * a2 * b2 * cn * cn + std::sqrt(d * d * d * d + 16.0 * a2 * b2 * cn * cn));
  } else {
    f = (cn * cn - 2.0 * a2 * b2 * (1.0 - cn) * (1.0 - cn) + 1.0) / (2.0 * norm);
  }
  return ChannelMetrics{conc, f, teleportation_fidelity(std::clamp(f, 0.0, 1.0))};
}

}  // namespace cohlab
