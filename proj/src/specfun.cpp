#include "cohlab/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "cohlab/errors.hpp"

namespace cohlab::specfun {
namespace {

using cplx = std::complex<double>;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr int max_iterations = 20000;

// -gamma - log z - sum_{k>=1} (-z)^k / (k k!)
cplx e1_series(cplx z) {
  cplx sum = 0.0;
  cplx term = 1.0;
  for (int k = 1; k < max_iterations; ++k) {
    term *= -z / static_cast<double>(k);
    const cplx contribution = term / static_cast<double>(k);
    sum += contribution;
    if (std::abs(contribution) <= 0.25 * eps * std::abs(sum)) {
      return -euler_gamma - std::log(z) - sum;
    }
  }
  throw ConvergenceError("e1: power series did not converge", std::abs(term));
}

// Continued fraction for e^z E1(z), modified Lentz.
cplx e1_scaled_fraction(cplx z) {
  constexpr double tiny = 1e-300;
  cplx b = z + 1.0;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < max_iterations; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) <= eps) return h;
  }
  throw ConvergenceError("e1: continued fraction did not converge", std::abs(h));
}

// The series loses roughly exp(|z| + Re z) in relative accuracy; beyond that
// the continued fraction converges quickly.
bool use_series(cplx z) {
  const double r = std::abs(z);
  return r <= 2.0 || r + z.real() <= 4.0;
}

}  // namespace

cplx e1(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    throw DomainError("e1: argument lies on the branch cut (non-positive real axis)");
  }
  if (-z.real() > 700.0) throw DomainError("e1: overflow for argument with large negative real part");
  const cplx value = use_series(z) ? e1_series(z) : std::exp(-z) * e1_scaled_fraction(z);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError("e1: overflow for argument with large negative real part");
  }
  return value;
}

double e1(double x) {
  if (!(x > 0.0)) throw DomainError("e1: real argument must be positive");
  if (x <= 1.0) return e1_series(cplx(x, 0.0)).real();
  return std::exp(-x) * e1_scaled_fraction(cplx(x, 0.0)).real();
}

double e1_scaled(double x) {
  if (!(x > 0.0)) throw DomainError("e1_scaled: argument must be positive");
  if (x <= 1.0) return std::exp(x) * e1_series(cplx(x, 0.0)).real();
  return e1_scaled_fraction(cplx(x, 0.0)).real();
}

namespace {

constexpr double ei_asymptotic_from = 40.0;

// gamma + ln x + sum x^k/(k k!); all terms positive for x > 0.
double ei_series(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k < max_iterations; ++k) {
    term *= x / k;
    const double contribution = term / k;
    sum += contribution;
    if (contribution <= 0.25 * eps * sum) return euler_gamma + std::log(x) + sum;
  }
  throw ConvergenceError("ei: power series did not converge", term);
}

// e^{-x} Ei(x) ~ (1/x) sum k!/x^k, truncated at the smallest term.
double ei_scaled_asymptotic(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < max_iterations; ++k) {
    const double next = term * k / x;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term <= 0.25 * eps * sum) break;
  }
  return sum / x;
}

}  // namespace

double ei(double x) {
  if (!(x > 0.0)) throw DomainError("ei: argument must be positive");
  if (x < ei_asymptotic_from) return ei_series(x);
  if (x > 709.0) throw DomainError("ei: overflow");
  return std::exp(x) * ei_scaled_asymptotic(x);
}

double ei_scaled(double x) {
  if (!(x > 0.0)) throw DomainError("ei_scaled: argument must be positive");
  if (x < ei_asymptotic_from) return std::exp(-x) * ei_series(x);
  return ei_scaled_asymptotic(x);
}

double dawson(double x) {
  const double ax = std::abs(x);
  if (ax < 0.2) {
    // x sum_k (-2x^2)^k / (2k+1)!!
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 30; ++k) {
      term *= -2.0 * x2 / (2.0 * k + 1.0);
      sum += term;
      if (std::abs(term) <= 0.25 * eps * std::abs(sum)) break;
    }
    return sum;
  }

  // Rybicki's sampling formula F(x) = lim (1/sqrt(pi)) sum_{n odd} e^{-(x-nh)^2}/n,
  // with h small enough that the discretisation error is ~exp(-(pi/2h)^2).
  constexpr double h = 0.2;
  constexpr int terms = 22;
  static const std::array<double, terms> weights = [] {
    std::array<double, terms> w{};
    for (int i = 0; i < terms; ++i) {
      const double v = (2.0 * i + 1.0) * h;
      w[i] = std::exp(-v * v);
    }
    return w;
  }();

  const double n0 = 2.0 * std::round(0.5 * ax / h);
  const double xp = ax - n0 * h;
  double e1f = std::exp(2.0 * xp * h);
  const double e2f = e1f * e1f;
  double d1 = n0 + 1.0;
  double d2 = d1 - 2.0;
  double sum = 0.0;
  for (int i = 0; i < terms; ++i) {
    sum += weights[i] * (e1f / d1 + 1.0 / (d2 * e1f));
    d1 += 2.0;
    d2 -= 2.0;
    e1f *= e2f;
  }
  const double value = std::numbers::inv_sqrtpi * std::exp(-xp * xp) * sum;
  return std::copysign(value, x);
}

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
  const double value = std::tgamma(x);
  if (!std::isfinite(value)) throw DomainError("gamma: overflow");
  return value;
}

}  // namespace cohlab::specfun
