#pragma once

#include <complex>

namespace cohlab::specfun {

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Exponential integral E1(z) = \int_1^\infty e^{-zt}/t dt, principal branch.
///
/// The cut lies on the non-positive real axis; a point with Im z == 0 and
/// Re z <= 0 raises DomainError. Points with a tiny nonzero imaginary part
/// resolve to the limit from that side: E1(-x +- i0) = -Ei(x) -+ i pi.
/// Raises DomainError with an "overflow" message when |E1(z)| would exceed
/// the double range (far out on the negative real side).
std::complex<double> e1(std::complex<double> z);

/// Real exponential integral E1(x) for x > 0.
double e1(double x);

/// e^x E1(x) for x > 0, evaluated without overflow for large x.
double e1_scaled(double x);

/// Principal-value exponential integral Ei(x) for x > 0.
double ei(double x);

/// e^{-x} Ei(x) for x > 0, evaluated without overflow for large x.
double ei_scaled(double x);

/// Dawson's integral F(x) = e^{-x^2} \int_0^x e^{t^2} dt.
double dawson(double x);

/// Gamma function for x > 0.
double gamma(double x);

}  // namespace cohlab::specfun
