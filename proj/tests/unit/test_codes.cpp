#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <random>

#include <boost/math/special_functions/binomial.hpp>

#include "cohlab/channel.hpp"
#include "cohlab/codes.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/qubit.hpp"

using namespace cohlab;
using cplx = std::complex<double>;

namespace {

/// Sum over all 2^n error patterns with at most (n-1)/2 flips, accumulated
/// in extended precision (2^15 terms would otherwise lose ~1e-13).
double enumerate_success(int n, double p) {
  long double total = 0.0L;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    if (2 * k < n) total += std::pow(static_cast<long double>(p), k) * std::pow(1.0L - p, n - k);
  }
  return static_cast<double>(total);
}

}  // namespace

TEST_CASE("code configuration") {
  CHECK_NOTHROW(CodeConfig{CodeKind::phase_flip, 3}.validate());
  CHECK_THROWS_AS(CodeConfig({CodeKind::phase_flip, 4}).validate(), DomainError);
  CHECK_NOTHROW(CodeConfig{CodeKind::bit_flip, 4}.validate());
  CHECK_THROWS_AS(CodeConfig({CodeKind::bit_flip, 0}).validate(), DomainError);
  CHECK(to_string(CodeKind::phase_flip) == "phase");
  CHECK(to_string(CodeKind::bit_flip) == "bit");
  CHECK(to_string(CodeKind::none) == "none");
}

TEST_CASE("phase-flip success probability") {
  CHECK(phase_success_prob(1, 0.3) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(phase_success_prob(101, 0.0) == 1.0);
  CHECK(phase_success_prob(3, 0.1) == doctest::Approx(0.972).epsilon(1e-14));
  for (int n : {1, 3, 5, 7, 9, 11, 15}) {
    for (double p : {0.01, 0.1, 0.3, 0.45, 0.49}) {
      CAPTURE(n);
      CAPTURE(p);
      CHECK(std::abs(phase_success_prob(n, p) - enumerate_success(n, p)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(phase_success_prob(4, 0.1), DomainError);
  CHECK_THROWS_AS(phase_success_prob(0, 0.1), DomainError);
}

TEST_CASE("phase-flip success at n = 101 matches an extended-precision sum") {
  for (double p : {0.05, 0.3, 0.4, 0.472, 0.499}) {
    long double total = 0;
    for (int k = 0; k <= 50; ++k)
      total += boost::math::binomial_coefficient<long double>(101, k) * std::pow((long double)p, k) *
               std::pow(1.0L - p, 101 - k);
    CAPTURE(p);
    CHECK(std::abs(phase_success_prob(101, p) - static_cast<double>(total)) < 1e-14);
  }
}

TEST_CASE("phase-flip success: range and monotonicity in n") {
  for (double p : {0.0, 0.05, 0.2, 0.4, 0.499}) {
    double prev = 0.0;
    for (int n = 1; n <= 201; n += 2) {
      const double ps = phase_success_prob(n, p);
      CHECK(ps > 0.5);
      CHECK(ps <= 1.0);
      CHECK(ps >= prev - 1e-15);
      CHECK(corrected_c(n, p) >= 1.0 - 2.0 * p - 1e-15);
      prev = ps;
    }
  }
}

TEST_CASE("corrected dephasing factor") {
  CHECK(corrected_c(7, 0.0) == 1.0);
  CHECK(corrected_c(1, 0.23) == doctest::Approx(1.0 - 0.46).epsilon(1e-15));
  CHECK(corrected_c(101, 0.4) > 0.95);
}

TEST_CASE("corrected channel metrics") {
  const cplx u = std::polar(0.4, 0.5);
  const auto bare = channel_metrics(1.2, u);
  const auto n1 = corrected_channel_metrics(1.2, u, 1);
  CHECK(n1.concurrence == doctest::Approx(bare.concurrence).epsilon(1e-14));
  CHECK(n1.f_max == doctest::Approx(bare.f_max).epsilon(1e-14));
  const auto n9 = corrected_channel_metrics(1.2, u, 9);
  CHECK(n9.fidelity > bare.fidelity);
  const double cp = corrected_c(9, phase_error_prob(1.2, u));
  const auto direct = closed_form_metrics(1.2, u, cp);
  CHECK(n9.f_max == doctest::Approx(direct.f_max).epsilon(1e-15));
  CHECK_THROWS_AS(corrected_channel_metrics(1.2, u, 2), DomainError);
}

TEST_CASE("bit-flip phase error grows with n") {
  CHECK(bitflip_p_e(1, 1.2, 0.8) == doctest::Approx(phase_error_prob(1.2, 0.8)).epsilon(1e-15));
  for (int n : {1, 2, 5}) CHECK(bitflip_p_e(n, 1.2, 1.0) == 0.0);
  const double p3 = bitflip_p_e(3, 1.2, 0.8), p6 = bitflip_p_e(6, 1.2, 0.8), p9 = bitflip_p_e(9, 1.2, 0.8);
  CHECK(p3 < p6);
  CHECK(p6 < p9);
  CHECK(p9 < 0.5);
  CHECK(p3 == doctest::Approx((1.0 - std::exp(-6.0 * 1.44 * 0.36)) / 2.0).epsilon(1e-14));
}

TEST_CASE("bit-flip density: n = 1 is the plain cluster state") {
  const cplx u = std::polar(0.55, -0.8);
  const auto a = bitflip_density(1, 1.2, u);
  const auto b = cluster_state_density(1.2, u);
  CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() < 1e-14);
  const auto m = bitflip_metrics(1, 1.2, u);
  const auto m0 = channel_metrics(1.2, u);
  CHECK(m.concurrence == doctest::Approx(m0.concurrence).epsilon(1e-13));
  CHECK(m.f_max == doctest::Approx(m0.f_max).epsilon(1e-13));
}

TEST_CASE("bit-flip density equals the n-mode element-map construction") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> r(0.0, 1.0);
  for (int n : {2, 3, 4, 6, 9}) {
    for (int k = 0; k < 8; ++k) {
      const cplx alpha0 = std::polar(0.3 + 1.5 * r(rng), 6.28 * r(rng));
      const cplx u = std::polar(r(rng), 6.28 * r(rng));
      const auto closed = bitflip_density(n, alpha0, u);
      const auto generic = cluster_state_density_generic(alpha0, u, n);
      CAPTURE(n);
      CHECK((closed.rho - generic.rho).cwiseAbs().maxCoeff() < 1e-12);
      const auto d = diagnose(closed);
      CHECK(d.trace_error < 1e-12);
      CHECK(d.hermiticity_error < 1e-12);
      CHECK(d.min_eigenvalue >= -1e-10);
      if (n % 2 == 1) CHECK(d.off_x_max < 1e-14);
    }
  }
}

TEST_CASE("bit-flip closed forms equal the oracles") {
  for (int n : {2, 3, 6, 9}) {
    for (int k = 0; k < 20; ++k) {
      const cplx u = std::polar(0.025 + 0.05 * k, 0.7 * k);
      const auto st = bitflip_density(n, 1.2, u);
      const auto m = bitflip_metrics(n, 1.2, u);
      CAPTURE(n);
      CAPTURE(u);
      CHECK(std::abs(wootters_concurrence(st) - m.concurrence) < 1e-10);
      CHECK(std::abs(fef_oracle(st) - m.f_max) < 1e-10);
      CHECK(m.fidelity == doctest::Approx((2.0 * m.f_max + 1.0) / 3.0));
    }
  }
}

TEST_CASE("bit-flip encoding degrades a damped channel") {
  const cplx u = 0.3;
  double prev = 2.0;
  for (int n : {1, 3, 6, 9}) {
    const double f = bitflip_metrics(n, 1.2, u).fidelity;
    CHECK(f < prev);
    prev = f;
  }
}
