#pragma once

#include <complex>

namespace cohlab {

/// Power-law spectral density with exponential cutoff,
///   J(w) = 2 pi eta_s w (w/w_c)^{s-1} e^{-w/w_c},  eta_s = eta0 (e/s)^s.
///
/// The eta_s scaling gives every s the same peak height 2 pi eta0 w_c,
/// located at w = s w_c. Immutable once constructed.
class BathSpec {
public:
  /// Throws DomainError unless s > 0, eta0 >= 0 and omega_c > 0.
  BathSpec(double s, double eta0, double omega_c = 1.0);

  double s() const noexcept { return s_; }
  double eta0() const noexcept { return eta0_; }
  double omega_c() const noexcept { return omega_c_; }

  /// Scaled coupling eta0 (e/s)^s.
  double eta_s() const noexcept;

  /// True for the exponents with hand-derived inversion formulas (1/2, 1, 3).
  bool has_closed_form() const noexcept;

private:
  double s_;
  double eta0_;
  double omega_c_;
};

/// Which route evaluates the frequency-domain self-energy.
enum class SelfEnergyRoute {
  automatic,    ///< closed form when available, otherwise quadrature
  closed_form,  ///< closed form only; UnsupportedError for other s
  quadrature,   ///< always use numerical quadrature
};

/// J(omega); DomainError for omega < 0.
double spectral_density(const BathSpec& spec, double omega);

/// g(t) = \int_0^\infty dw/(2 pi) J(w) e^{-i w t}
///      = eta_s w_c^2 Gamma(s+1) / (1 + i w_c t)^{s+1}.
/// DomainError for t < 0.
std::complex<double> correlation(const BathSpec& spec, double t);

/// Real part of the bath self-energy on the imaginary Laplace axis, in units
/// of omega_c. With x = omega/omega_c,
///   shift(x) = eta_s PV \int_0^\infty y^s e^{-y} / (y - x) dy.
/// For x < 0 the integral is regular; for x > 0 it is a principal value;
/// shift(0) = eta_s Gamma(s).
double level_shift(const BathSpec& spec, double x,
                   SelfEnergyRoute route = SelfEnergyRoute::automatic);

/// d shift / dx for x < 0, i.e. eta_s \int y^s e^{-y} / (y - x)^2 dy.
double level_shift_slope(const BathSpec& spec, double x,
                         SelfEnergyRoute route = SelfEnergyRoute::automatic);

/// Denominator of the branch-cut integrand of the Laplace inversion,
/// dimensionless, for a cut frequency omega > 0:
///   X(w) = (w0 - w - shift(w)) - i J(w) / (2 w_c),   w0, w in units of w_c.
///
/// For s in {1/2, 1, 3} this evaluates the hand-derived expressions in terms
/// of Ei and Dawson's integral; other exponents go through quadrature unless
/// route == closed_form, which raises UnsupportedError.
std::complex<double> inversion_denominator(const BathSpec& spec, double omega0, double omega,
                                           SelfEnergyRoute route = SelfEnergyRoute::automatic);

/// Laplace transform of the correlation function, ghat(z) = \int_0^\infty g(t) e^{-zt} dt,
/// for Re z > 0 (z in physical units). Closed form through E1 for s = 1 and s = 3,
/// quadrature otherwise.
std::complex<double> correlation_laplace(const BathSpec& spec, std::complex<double> z);

}  // namespace cohlab
