#include "cohlab/qubit.hpp"

#include <cmath>

#include "cohlab/errors.hpp"

namespace cohlab {

using cplx = std::complex<double>;

cplx overlap(cplx bra, cplx ket) {
  return std::exp(-0.5 * (std::norm(bra) + std::norm(ket) - 2.0 * std::conj(bra) * ket));
}

CoherentElement evolve_element(const CoherentElement& elem, cplx u) {
  const double loss = 1.0 - std::norm(u);
  const cplx a = elem.ket_amp;
  const cplx b = elem.bra_amp;
  const cplx factor = std::exp(-0.5 * loss * (std::norm(a) + std::norm(b) - 2.0 * a * std::conj(b)));
  return CoherentElement{elem.prefactor * factor, a * u, b * u};
}

double dephasing_factor(cplx alpha0, cplx u) {
  if (std::abs(u) > 1.0 + 1e-12) throw DomainError("|u| must not exceed 1");
  return std::exp(-2.0 * std::norm(alpha0) * (1.0 - std::norm(u)));
}

double phase_error_prob(cplx alpha0, cplx u) {
  if (std::abs(u) > 1.0 + 1e-12) throw DomainError("phase_error_prob: |u| must not exceed 1");
  // -expm1 keeps p_e accurate when |u| is close to 1.
  return -0.5 * std::expm1(-2.0 * std::norm(alpha0) * (1.0 - std::norm(u)));
}

CatState::CatState(cplx c1, cplx c2, cplx alpha0) : c1_(c1), c2_(c2), alpha0_(alpha0) {
  if (std::abs(std::norm(c1) + std::norm(c2) - 1.0) > 1e-12) {
    throw DomainError("CatState: |c1|^2 + |c2|^2 must be 1");
  }
  norm_ = 1.0 + std::exp(-2.0 * std::norm(alpha0)) * 2.0 * (std::conj(c1) * c2).real();
  // Rounding leaves N ~ 1e-16 for the odd cat at alpha0 = 0.
  if (!(norm_ > 1e-12)) throw DomainError("CatState: vanishing normalization");
}

DampedQubit evolve_cat(const CatState& state, cplx u) {
  const cplx amps[2] = {state.alpha0(), -state.alpha0()};
  const cplx coeff[2] = {state.c1(), state.c2()};
  DampedQubit out{Eigen::Matrix2cd::Zero(), state.alpha0() * u, phase_error_prob(state.alpha0(), u)};
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      const auto e = evolve_element({coeff[m] * std::conj(coeff[n]), amps[m], amps[n]}, u);
      out.coeffs(m, n) = e.prefactor / state.normalization();
    }
  }
  return out;
}

DampedQubit evolve_cat_operator_sum(const CatState& state, cplx u) {
  const double p_e = phase_error_prob(state.alpha0(), u);
  const double root_n = std::sqrt(state.normalization());
  const Eigen::Vector2cd q(state.c1() / root_n, state.c2() / root_n);
  const Eigen::Vector2cd zq(q(0), -q(1));
  Eigen::Matrix2cd rho = (1.0 - p_e) * q * q.adjoint() + p_e * zq * zq.adjoint();
  return DampedQubit{rho, state.alpha0() * u, p_e};
}

EvenOddCoeffs EvenOddCoeffs::from_amplitude(cplx alpha_t, int n) {
  if (n < 1) throw DomainError("EvenOddCoeffs: n must be positive");
  const double x = std::exp(-2.0 * n * std::norm(alpha_t));
  // b^2 = -expm1(-2n|alpha|^2)/2 avoids cancellation for small amplitudes.
  return EvenOddCoeffs{std::sqrt(0.5 * (1.0 + x)), std::sqrt(-0.5 * std::expm1(-2.0 * n * std::norm(alpha_t)))};
}

Eigen::Matrix2cd to_even_odd(const DampedQubit& state) {
  const auto [a, b] = EvenOddCoeffs::from_amplitude(state.alpha_t);
  Eigen::Matrix2cd t;
  t << a, a, b, -b;
  return t * state.coeffs * t.transpose();
}

}  // namespace cohlab
