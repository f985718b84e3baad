#pragma once

// Thin wrappers over Boost.Math quadrature used by the generic (any-s) bath
// formulas and the principal-value shifts.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace cohlab::detail {

inline constexpr double quad_tol = 1e-13;

// y^s e^{-y}, zero once e^{-y} underflows (exp_sinh probes y ~ 1e300, where
// pow overflows first).
inline double power_exp(double y, double s) { return y > 745.0 ? 0.0 : std::pow(y, s) * std::exp(-y); }

/// Smooth integrand on a finite interval. The depth cap bounds the cost when
/// rounding noise (a subtracted pole) keeps the tolerance out of reach.
template <class F>
double integrate_smooth(const F& f, double a, double b, double tol = quad_tol) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, tol);
}

/// Finite interval with an integrable endpoint singularity.
template <class F>
double integrate_endpoint_singular(const F& f, double a, double b, double tol = quad_tol) {
  if (a == b) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, tol);
}

/// \int_a^\infty f for an exponentially decaying integrand.
template <class F>
double integrate_to_infinity(const F& f, double a, double tol = quad_tol) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, a, std::numeric_limits<double>::infinity(), tol);
}

}  // namespace cohlab::detail
