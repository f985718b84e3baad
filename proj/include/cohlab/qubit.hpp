#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cohlab {

/// prefactor * |ket_amp><bra_amp| for coherent states |alpha>.
struct CoherentElement {
  std::complex<double> prefactor{1.0, 0.0};
  std::complex<double> ket_amp;
  std::complex<double> bra_amp;
};

/// <bra|ket> = exp(-(|bra|^2 + |ket|^2 - 2 conj(bra) ket) / 2).
std::complex<double> overlap(std::complex<double> bra, std::complex<double> ket);

/// Exact zero-temperature map of a single element:
///   |a><b| -> exp(-(1 - |u|^2)(|a|^2 + |b|^2 - 2 a conj(b)) / 2) |a u><b u|.
CoherentElement evolve_element(const CoherentElement& elem, std::complex<double> u);

/// p_e = (1 - exp(-2(|alpha0|^2 - |alpha0 u|^2))) / 2. DomainError for |u| > 1.
double phase_error_prob(std::complex<double> alpha0, std::complex<double> u);

/// c = 1 - 2 p_e = exp(-2 |alpha0|^2 (1 - |u|^2)).
double dephasing_factor(std::complex<double> alpha0, std::complex<double> u);

/// (c1 |alpha0> + c2 |-alpha0>) / sqrt(N).
class CatState {
public:
  /// DomainError unless |c1|^2 + |c2|^2 = 1 (to 1e-12) and N > 0.
  CatState(std::complex<double> c1, std::complex<double> c2, std::complex<double> alpha0);

  std::complex<double> c1() const noexcept { return c1_; }
  std::complex<double> c2() const noexcept { return c2_; }
  std::complex<double> alpha0() const noexcept { return alpha0_; }

  /// N = 1 + exp(-2|alpha0|^2) 2 Re(conj(c1) c2).
  double normalization() const noexcept { return norm_; }

private:
  std::complex<double> c1_, c2_, alpha0_;
  double norm_;
};

/// Evolved single-qubit state. `coeffs` holds rho in the (nonorthogonal)
/// damped basis {|alpha_t>, |-alpha_t>}: rho = sum_mn coeffs(m,n) |m><n|.
struct DampedQubit {
  Eigen::Matrix2cd coeffs;
  std::complex<double> alpha_t;
  double p_e;
};

/// Direct element-by-element evolution of the cat state.
DampedQubit evolve_cat(const CatState& state, std::complex<double> u);

/// Same state assembled as (1 - p_e)|Q_t><Q_t| + p_e Z|Q_t><Q_t|Z^dagger, where Z
/// flips the sign of the |-alpha_t> coefficient.
DampedQubit evolve_cat_operator_sum(const CatState& state, std::complex<double> u);

/// Coefficients of |+-alpha> in the orthonormal even/odd basis:
/// |alpha> = a|e> + b|o>, |-alpha> = a|e> - b|o>, with
/// a, b = sqrt((1 +- exp(-2 n |alpha|^2)) / 2) for the n-fold product state.
struct EvenOddCoeffs {
  double a;
  double b;

  static EvenOddCoeffs from_amplitude(std::complex<double> alpha_t, int n = 1);
};

/// rho of a DampedQubit in the {|e>, |o>} basis.
Eigen::Matrix2cd to_even_odd(const DampedQubit& state);

}  // namespace cohlab
