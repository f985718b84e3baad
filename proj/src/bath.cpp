#include "cohlab/bath.hpp"

#include <cmath>
#include <numbers>

#include "cohlab/errors.hpp"
#include "cohlab/specfun.hpp"
#include "quadrature.hpp"

namespace cohlab {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt_pi = 1.7724538509055160272981674833411;

enum class Family { sub_ohmic_half, ohmic, super_ohmic_cubic, other };

Family family(double s) {
  constexpr double tol = 1e-12;
  if (std::abs(s - 0.5) < tol) return Family::sub_ohmic_half;
  if (std::abs(s - 1.0) < tol) return Family::ohmic;
  if (std::abs(s - 3.0) < tol) return Family::super_ohmic_cubic;
  return Family::other;
}

bool use_closed_form(const BathSpec& spec, SelfEnergyRoute route) {
  switch (route) {
    case SelfEnergyRoute::quadrature:
      return false;
    case SelfEnergyRoute::closed_form:
      if (!spec.has_closed_form()) {
        throw UnsupportedError("no hand-derived self-energy for s = " + std::to_string(spec.s()));
      }
      return true;
    case SelfEnergyRoute::automatic:
      break;
  }
  return spec.has_closed_form();
}

using detail::power_exp;

// \int_0^\infty y^s e^{-y} / (y + a) dy for a > 0.
double stieltjes_quadrature(double s, double a) {
  auto f = [s, a](double y) { return power_exp(y, s) / (y + a); };
  const double split = std::min(1.0, a);
  return detail::integrate_endpoint_singular(f, 0.0, split) + detail::integrate_to_infinity(f, split);
}

double stieltjes_slope_quadrature(double s, double a) {
  auto f = [s, a](double y) {
    const double d = y + a;
    return power_exp(y, s) / (d * d);
  };
  const double split = std::min(1.0, a);
  return detail::integrate_endpoint_singular(f, 0.0, split) + detail::integrate_to_infinity(f, split);
}

// PV \int_0^\infty y^s e^{-y} / (y - x) dy for x > 0 by singularity subtraction:
// the subtracted constant integrates to zero over the symmetric window [0, 2x].
double principal_value_quadrature(double s, double x) {
  auto phi = [s](double y) { return power_exp(y, s); };
  const double phi_x = phi(x);
  auto subtracted = [&](double y) { return (phi(y) - phi_x) / (y - x); };
  auto tail = [&](double y) { return phi(y) / (y - x); };
  const double near = detail::integrate_endpoint_singular(subtracted, 0.0, 0.5 * x) +
                      detail::integrate_smooth(subtracted, 0.5 * x, x) +
                      detail::integrate_smooth(subtracted, x, 2.0 * x);
  return near + detail::integrate_to_infinity(tail, 2.0 * x);
}

}  // namespace

BathSpec::BathSpec(double s, double eta0, double omega_c) : s_(s), eta0_(eta0), omega_c_(omega_c) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("BathSpec: s must be positive");
  if (!(eta0 >= 0.0) || !std::isfinite(eta0)) throw DomainError("BathSpec: eta0 must be non-negative");
  if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw DomainError("BathSpec: omega_c must be positive");
}

double BathSpec::eta_s() const noexcept { return eta0_ * std::pow(std::numbers::e / s_, s_); }

bool BathSpec::has_closed_form() const noexcept { return family(s_) != Family::other; }

double spectral_density(const BathSpec& spec, double omega) {
  if (!(omega >= 0.0)) throw DomainError("spectral_density: omega must be non-negative");
  if (omega == 0.0) return 0.0;
  const double x = omega / spec.omega_c();
  return 2.0 * pi * spec.eta_s() * spec.omega_c() * std::pow(x, spec.s()) * std::exp(-x);
}

std::complex<double> correlation(const BathSpec& spec, double t) {
  if (!(t >= 0.0)) throw DomainError("correlation: t must be non-negative");
  const double wc = spec.omega_c();
  const double amplitude = spec.eta_s() * wc * wc * specfun::gamma(spec.s() + 1.0);
  return amplitude * std::pow(std::complex<double>(1.0, wc * t), -(spec.s() + 1.0));
}

double level_shift(const BathSpec& spec, double x, SelfEnergyRoute route) {
  const double es = spec.eta_s();
  const double s = spec.s();
  if (x == 0.0) return es * specfun::gamma(s);

  if (!use_closed_form(spec, route)) {
    if (x < 0.0) return es * stieltjes_quadrature(s, -x);
    return es * principal_value_quadrature(s, x);
  }

  if (x > 0.0) {
    // PV integrals reduce to e^{-x} Ei(x) and Dawson's integral.
    switch (family(s)) {
      case Family::ohmic:
        return es * (1.0 - x * specfun::ei_scaled(x));
      case Family::super_ohmic_cubic:
        return es * (2.0 + x + x * x - x * x * x * specfun::ei_scaled(x));
      case Family::sub_ohmic_half: {
        const double r = std::sqrt(x);
        return es * (sqrt_pi - 2.0 * sqrt_pi * r * specfun::dawson(r));
      }
      case Family::other:
        break;
    }
  } else {
    const double a = -x;
    switch (family(s)) {
      case Family::ohmic:
        return es * (1.0 - a * specfun::e1_scaled(a));
      case Family::super_ohmic_cubic:
        return es * (2.0 - a + a * a - a * a * a * specfun::e1_scaled(a));
      case Family::sub_ohmic_half: {
        const double r = std::sqrt(a);
        return es * (sqrt_pi - pi * r * std::exp(a) * std::erfc(r));
      }
      case Family::other:
        break;
    }
  }
  throw UnsupportedError("level_shift: no closed form");
}

double level_shift_slope(const BathSpec& spec, double x, SelfEnergyRoute route) {
  if (!(x < 0.0)) throw DomainError("level_shift_slope: x must be negative (outside the band)");
  const double es = spec.eta_s();
  const double a = -x;
  if (!use_closed_form(spec, route)) return es * stieltjes_slope_quadrature(spec.s(), a);

  // Minus the a-derivative of the closed forms used in level_shift.
  switch (family(spec.s())) {
    case Family::ohmic: {
      const double S = specfun::e1_scaled(a);
      return -es * (1.0 - (1.0 + a) * S);
    }
    case Family::super_ohmic_cubic: {
      const double S = specfun::e1_scaled(a);
      return -es * (-1.0 + 2.0 * a + a * a - (3.0 * a * a + a * a * a) * S);
    }
    case Family::sub_ohmic_half: {
      const double r = std::sqrt(a);
      const double q = std::exp(a) * std::erfc(r);
      return -es * (-pi * q / (2.0 * r) - pi * r * q + sqrt_pi);
    }
    case Family::other:
      break;
  }
  throw UnsupportedError("level_shift_slope: no closed form");
}

std::complex<double> inversion_denominator(const BathSpec& spec, double omega0, double omega,
                                           SelfEnergyRoute route) {
  if (!(omega > 0.0)) throw DomainError("inversion_denominator: omega must be positive");
  const double w0 = omega0 / spec.omega_c();
  const double w = omega / spec.omega_c();
  const double es = spec.eta_s();
  constexpr std::complex<double> i(0.0, 1.0);

  if (!use_closed_form(spec, route)) {
    const double damping = pi * es * std::pow(w, spec.s()) * std::exp(-w);
    return {w0 - w - level_shift(spec, w, SelfEnergyRoute::quadrature), -damping};
  }

  switch (family(spec.s())) {
    case Family::super_ohmic_cubic: {
      // e^{-w}(-Ei(w) + i pi)
      const std::complex<double> cut(-specfun::ei_scaled(w), pi * std::exp(-w));
      return (w0 - 2.0 * es) - (1.0 + es) * w - es * w * w - es * w * w * w * cut;
    }
    case Family::sub_ohmic_half: {
      const double r = std::sqrt(w);
      return (w0 - sqrt_pi * es) - w -
             i * pi * es * r * (std::exp(-w) + i * (2.0 / sqrt_pi) * specfun::dawson(r));
    }
    case Family::ohmic: {
      const std::complex<double> cut(-specfun::ei_scaled(w), pi * std::exp(-w));
      return (w0 - es) - w * (1.0 + es * cut);
    }
    case Family::other:
      break;
  }
  throw UnsupportedError("inversion_denominator: no closed form");
}

std::complex<double> correlation_laplace(const BathSpec& spec, std::complex<double> z) {
  if (!(z.real() > 0.0)) throw DomainError("correlation_laplace: requires Re z > 0");
  constexpr std::complex<double> i(0.0, 1.0);
  const double es = spec.eta_s();
  // ghat(z) = -i eta_s tau_c \int_0^\infty y^s e^{-y} / (y - w) dy with w = i z tau_c,
  // multiplied back to physical units by omega_c^2 tau_c = omega_c.
  const std::complex<double> w = i * z / spec.omega_c();
  const double scale = spec.omega_c();

  if (spec.has_closed_form() && family(spec.s()) != Family::sub_ohmic_half) {
    // \int e^{-y}/(y - w) dy = e^{-w} E1(-w)
    const std::complex<double> base = std::exp(-w) * specfun::e1(-w);
    std::complex<double> moment;
    if (family(spec.s()) == Family::ohmic) {
      moment = 1.0 + w * base;
    } else {
      moment = 2.0 + w + w * w + w * w * w * base;
    }
    return -i * es * scale * moment;
  }

  const double s = spec.s();
  auto re = [&](double y) { return (power_exp(y, s) / (y - w)).real(); };
  auto im = [&](double y) { return (power_exp(y, s) / (y - w)).imag(); };
  const double split = 1.0;
  const std::complex<double> moment(
      detail::integrate_endpoint_singular(re, 0.0, split) + detail::integrate_to_infinity(re, split),
      detail::integrate_endpoint_singular(im, 0.0, split) + detail::integrate_to_infinity(im, split));
  return -i * es * scale * moment;
}

}  // namespace cohlab
