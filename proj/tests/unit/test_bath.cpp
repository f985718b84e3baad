#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cohlab/bath.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/specfun.hpp"
#include "oracles.hpp"

using namespace cohlab;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

TEST_CASE("BathSpec validates and derives eta_s") {
  CHECK_THROWS_AS(BathSpec(0.0, 0.1), DomainError);
  CHECK_THROWS_AS(BathSpec(1.0, -0.1), DomainError);
  CHECK_THROWS_AS(BathSpec(1.0, 0.1, 0.0), DomainError);
  const BathSpec b(3.0, 0.5);
  CHECK(b.eta_s() == doctest::Approx(0.5 * std::pow(std::numbers::e / 3.0, 3.0)).epsilon(1e-15));
  CHECK(b.has_closed_form());
  CHECK_FALSE(BathSpec(2.0, 0.5).has_closed_form());
}

TEST_CASE("spectral density peaks at s omega_c with height 2 pi eta0 omega_c") {
  for (double wc : {1.0, 2.5}) {
    for (double s : {0.5, 1.0, 3.0, 1.7}) {
      const BathSpec b(s, 0.3, wc);
      CAPTURE(s);
      CHECK(spectral_density(b, 0.0) == 0.0);
      CHECK(std::abs(spectral_density(b, s * wc) - 2.0 * pi * 0.3 * wc) < 1e-12);
      const double peak = oracle::argmax([&](double w) { return spectral_density(b, w); }, 0.0, 20.0 * wc);
      CHECK(peak == doctest::Approx(s * wc).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(spectral_density(BathSpec(1.0, 0.1), -1e-3), DomainError);
}

TEST_CASE("total spectral weight") {
  for (double s : {0.5, 1.0, 3.0}) {
    const BathSpec b(s, 0.5);
    auto j = [&](double w) { return spectral_density(b, w); };
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    const double total = ts.integrate(j, 0.0, 1.0, 1e-15) + oracle::panels(j, 1.0, 150.0, 2.0);
    const double expected = 2.0 * pi * b.eta_s() * std::tgamma(s + 1.0);
    CHECK(std::abs(total / expected - 1.0) < 1e-8);
    CHECK(std::abs(correlation(b, 0.0).real() - expected / (2.0 * pi)) < 1e-12 * expected);
  }
}

TEST_CASE("correlation equals quadrature of its defining integral") {
  const double times[] = {0.0, 0.05, 0.3, 1.0, 2.0, 3.7, 6.0, 10.0, 25.0, 60.0};
  for (double s : {0.5, 1.0, 3.0}) {
    const BathSpec b(s, 0.5);
    for (double t : times) {
      CAPTURE(s);
      CAPTURE(t);
      const cplx closed = correlation(b, t);
      const cplx quad = oracle::correlation_quadrature(s, 0.5, t);
      CHECK(std::abs(closed - quad) < 1e-8 * std::abs(closed));
      const double modulus = b.eta_s() * std::tgamma(s + 1.0) / std::pow(1.0 + t * t, (s + 1.0) / 2.0);
      CHECK(std::abs(std::abs(closed) - modulus) < 1e-14 * modulus);
    }
  }
  // The worked value at s = 1, eta0 = 0.5, t = 2, to 1e-8.
  const BathSpec ohmic(1.0, 0.5);
  CHECK(std::abs(correlation(ohmic, 2.0) - oracle::correlation_quadrature(1.0, 0.5, 2.0)) < 1e-8);
  CHECK_THROWS_AS(correlation(ohmic, -1.0), DomainError);
}

TEST_CASE("correlation scales with omega_c") {
  const BathSpec b(1.0, 0.2, 2.0);
  const BathSpec unit(1.0, 0.2, 1.0);
  CHECK(std::abs(correlation(b, 0.75) - 4.0 * correlation(unit, 1.5)) < 1e-14);
}

TEST_CASE("level shift at the origin and on the negative axis") {
  for (double s : {0.5, 1.0, 3.0, 2.0}) {
    const BathSpec b(s, 0.5);
    CAPTURE(s);
    CHECK(level_shift(b, 0.0) == doctest::Approx(b.eta_s() * std::tgamma(s)).epsilon(1e-10));
    for (double x : {-0.3, -4.0}) {
      auto f = [&](double y) { return b.eta_s() * std::pow(y, s) * std::exp(-y) / (y - x); };
      static thread_local boost::math::quadrature::tanh_sinh<double> ts;
      const double ref = ts.integrate(f, 0.0, 1.0, 1e-15) + oracle::panels(f, 1.0, 150.0, 2.0);
      CHECK(level_shift(b, x) == doctest::Approx(ref).epsilon(1e-10));
      const double slope = oracle::derivative([&](double y) { return level_shift(b, y); }, x, 1e-3);
      CHECK(level_shift_slope(b, x) == doctest::Approx(slope).epsilon(1e-8));
    }
  }
}

TEST_CASE("closed-form denominators agree with the generic quadrature route") {
  for (double s : {0.5, 1.0, 3.0}) {
    const BathSpec b(s, 0.5);
    for (double w : {1e-4, 0.05, 0.1, 0.7, 1.0, 3.0, 12.0, 40.0}) {
      CAPTURE(s);
      CAPTURE(w);
      const cplx closed = inversion_denominator(b, 0.1, w, SelfEnergyRoute::closed_form);
      const cplx quad = inversion_denominator(b, 0.1, w, SelfEnergyRoute::quadrature);
      CHECK(std::abs(closed - quad) < 1e-9 * std::max(1.0, std::abs(closed)));
    }
  }
  CHECK_THROWS_AS(inversion_denominator(BathSpec(2.0, 0.5), 0.1, 1.0, SelfEnergyRoute::closed_form),
                  UnsupportedError);
  CHECK_THROWS_AS(inversion_denominator(BathSpec(1.0, 0.5), 0.1, 0.0), DomainError);
}

TEST_CASE("denominator matches the transform of the correlation on the real axis") {
  // X(w) = (w0 - w) - i ghat(-i w + 0+), ghat from g(t) by Fourier quadrature.
  struct Case {
    double s, w;
  };
  for (auto [s, w] : {Case{1.0, 1.0}, Case{1.0, 0.2}, Case{3.0, 2.0}, Case{0.5, 0.6}, Case{2.0, 1.3}}) {
    const BathSpec b(s, 0.5);
    CAPTURE(s);
    CAPTURE(w);
    const cplx ghat = oracle::correlation_transform_on_axis([&](double t) { return correlation(b, t); }, w);
    const cplx expected = (0.1 - w) - cplx(0, 1) * ghat;
    CHECK(std::abs(inversion_denominator(b, 0.1, w) - expected) < 1e-6);
  }
}

TEST_CASE("denominator limits") {
  const BathSpec free(3.0, 0.0);
  for (double w : {0.01, 1.0, 9.0}) CHECK(std::abs(inversion_denominator(free, 0.1, w) - cplx(0.1 - w, 0.0)) < 1e-15);

  // Sub-Ohmic: the imaginary part is -J/2 = -pi eta_s sqrt(w) e^{-w} -> 0.
  const BathSpec sub(0.5, 0.5);
  for (double w : {1e-2, 1e-4, 1e-8}) {
    const double im = inversion_denominator(sub, 0.1, w).imag();
    CHECK(im == doctest::Approx(-pi * sub.eta_s() * std::sqrt(w) * std::exp(-w)).epsilon(1e-12));
  }
  // Ohmic at w -> 0+: real part tends to w0 - eta_s.
  const BathSpec ohm(1.0, 0.5);
  CHECK(inversion_denominator(ohm, 0.1, 1e-9).real() == doctest::Approx(0.1 - ohm.eta_s()).epsilon(1e-6));
}

TEST_CASE("Laplace transform of the correlation") {
  for (double s : {0.5, 1.0, 3.0}) {
    const BathSpec b(s, 0.5);
    for (cplx z : {cplx(0.5, 0.0), cplx(2.0, 1.0), cplx(0.1, -3.0)}) {
      CAPTURE(s);
      CAPTURE(z);
      auto part = [&](bool imag) {
        auto f = [&](double t) {
          const cplx v = correlation(b, t) * std::exp(-z * t);
          return imag ? v.imag() : v.real();
        };
        return oracle::panels(f, 0.0, 400.0, 0.5);
      };
      // Tail beyond t = 400 is below 1e-9 for these Re z.
      const cplx ref(part(false), part(true));
      CHECK(std::abs(correlation_laplace(b, z) - ref) < 1e-8);
    }
  }
}
