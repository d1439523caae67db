#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hsc/dispersion.hpp"
#include "hsc/spectral.hpp"

using hsc::DerivedCoeffs;
using cplx = std::complex<double>;

namespace {

// alpha_i = 1, alpha_o = 2, beta = 0, gamma_o - gamma_i = 1, sigma = 1, R = 2
DerivedCoeffs reference_coeffs() {
  DerivedCoeffs c;
  c.alpha_i = 1.0;
  c.alpha_o = 2.0;
  c.gamma_o = 1.0;
  c.theta_i = {1.0, 0.0};
  c.theta_o = {2.0, 0.0};
  return c;
}

DerivedCoeffs coriolis_coeffs() {
  DerivedCoeffs c = reference_coeffs();
  c.beta_i = 0.5;
  c.beta_o = 1.5;
  c.theta_i = {1.0, 0.5};
  c.theta_o = {2.0, 1.5};
  return c;
}

}  // namespace

TEST_CASE("hand-evaluated multiplier and rate values") {
  const DerivedCoeffs c = reference_coeffs();
  CHECK(std::abs(hsc::compute_l_n(c, 2.0, 1) - cplx(-0.3, 0.0)) <= 1e-15);
  CHECK(std::abs(hsc::compute_q_n(c, 1.0, 2.0, 1) - cplx(-6.0 / 13.0, 0.0)) <=
        1e-14);
  CHECK(std::abs(hsc::compute_q_n(c, 1.0, 2.0, 2) - cplx(-150.0 / 49.0, 0.0)) <=
        1e-13);
  CHECK(hsc::spectral_bound(c) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  // deep-mode limit of the multiplier
  CHECK(std::abs(hsc::compute_l_n(c, 2.0, 40) - cplx(-0.5, 0.0)) <= 1e-10);

  DerivedCoeffs reversed = c;
  reversed.gamma_o = 0.0;
  reversed.gamma_i = 1.0;
  CHECK(std::abs(hsc::compute_q_n(reversed, 1.0, 2.0, 1) -
                 cplx(6.0 / 13.0, 0.0)) <= 1e-14);
}

TEST_CASE("rotation coupling makes the spectrum complex") {
  const DerivedCoeffs c = coriolis_coeffs();
  const cplx q1 = hsc::compute_q_n(c, 1.0, 2.0, 1);
  CHECK(std::abs(q1 - cplx(-39.0 / 89.0, -9.0 / 89.0)) <= 1e-14);
  const cplx q2 = hsc::compute_q_n(c, 1.0, 2.0, 2);
  CHECK(std::abs(q2 - cplx(-3675.0 / 1313.0, -1125.0 / 1313.0)) <= 1e-13);
}

TEST_CASE("mode one is neutral without a density contrast") {
  DerivedCoeffs c = reference_coeffs();
  c.gamma_i = c.gamma_o = 0.7;
  CHECK(hsc::compute_q_n(c, 1.0, 2.0, 1) == cplx(0.0, 0.0));
  CHECK(hsc::compute_q_n(c, 1.0, 2.0, -1) == cplx(0.0, 0.0));
}

TEST_CASE("zero mode is pinned to zero") {
  CHECK(hsc::compute_q_n(reference_coeffs(), 1.0, 2.0, 0) == cplx(0.0, 0.0));
}

TEST_CASE("conjugate symmetry across the mode sign") {
  for (const DerivedCoeffs& c : {reference_coeffs(), coriolis_coeffs()}) {
    for (int n : {1, 2, 3, 7, 20, 64, 200}) {
      const cplx qp = hsc::compute_q_n(c, 1.3, 2.5, n);
      const cplx qm = hsc::compute_q_n(c, 1.3, 2.5, -n);
      CHECK(qm == std::conj(qp));
      const cplx lp = hsc::compute_l_n(c, 2.5, n);
      const cplx lm = hsc::compute_l_n(c, 2.5, -n);
      CHECK(std::abs(lm - std::conj(lp)) <= 1e-15 * std::abs(lp));
    }
  }
  CHECK(hsc::compute_l_n(reference_coeffs(), 2.0, -1).imag() == 0.0);
}

TEST_CASE("no rotation coupling means a purely real spectrum") {
  const DerivedCoeffs c = reference_coeffs();
  for (int n = 1; n <= 64; ++n)
    CHECK(hsc::compute_q_n(c, 1.0, 2.0, n).imag() == 0.0);

  DerivedCoeffs balanced = coriolis_coeffs();
  balanced.beta_i = balanced.beta_o = 1.0;  // B = 0 with rotation present
  balanced.theta_i = {1.0, 1.0};
  balanced.theta_o = {2.0, 1.0};
  for (int n = 1; n <= 32; ++n)
    CHECK(std::abs(hsc::compute_q_n(balanced, 1.0, 2.0, n).imag()) <= 1e-16);
}

TEST_CASE("mode range guard") {
  const DerivedCoeffs c = reference_coeffs();
  CHECK_NOTHROW(hsc::compute_l_n(c, 2.0, 512));
  CHECK_NOTHROW(hsc::compute_q_n(c, 1.0, 2.0, -512));
  CHECK_THROWS_AS(hsc::compute_l_n(c, 2.0, 513), hsc::range_error);
  CHECK_THROWS_AS(hsc::compute_q_n(c, 1.0, 2.0, -513), hsc::range_error);
  CHECK_THROWS_AS(hsc::compute_l_n(c, 2.0, 0), hsc::range_error);
  CHECK(std::isfinite(hsc::compute_l_n(c, 2.0, 512).real()));
}

TEST_CASE("table symmetries, bounds and the cubic tail") {
  const DerivedCoeffs c = coriolis_coeffs();
  const hsc::DispersionTable t = hsc::build_dispersion_table(c, 1.0, 2.0, 64);
  CHECK(t.B == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.lambda_star == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(t.verdict == hsc::Verdict::Stable);

  double prev_A = t.mode(1).A_n;
  for (int n = 1; n <= 64; ++n) {
    const hsc::ModeRecord& m = t.mode(n);
    const hsc::ModeRecord& mm = t.mode(-n);
    CHECK(mm.q_n == std::conj(m.q_n));
    CHECK(mm.A_n == m.A_n);
    CHECK(mm.mu_n == m.mu_n);
    CHECK(std::abs(m.l_n - cplx(1.0, 0.0)) > 1e-6);
    CHECK(m.q_n.real() < t.lambda_star);
    CHECK(m.A_n <= prev_A);
    prev_A = m.A_n;
  }
  CHECK(std::abs(t.mode(64).A_n - 3.0) <= 1e-12);

  const double tail = t.mode(64).q_n.real() / (64.0 * 64.0 * 64.0);
  const double limit = -1.0 * 3.0 / (3.0 * 3.0 + 1.0 * 1.0);
  CHECK(std::abs(tail - limit) <= 0.02 * std::abs(limit));
}

TEST_CASE("spectral bound dominates random admissible parameter draws") {
  std::mt19937 gen(2026u);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    DerivedCoeffs c;
    c.alpha_i = 0.5 + 2.5 * u(gen);
    c.alpha_o = 0.5 + 2.5 * u(gen);
    c.beta_i = 2.0 * u(gen);
    c.beta_o = 2.0 * u(gen);
    c.gamma_i = 1.5 * u(gen);
    c.gamma_o = 1.5 * u(gen);
    c.theta_i = {c.alpha_i, c.beta_i};
    c.theta_o = {c.alpha_o, c.beta_o};
    const double sigma = 0.5 + 1.5 * u(gen);
    const double R = 2.0 + 2.0 * u(gen);
    const double bound = hsc::spectral_bound(c);
    for (int n = 1; n <= 128; ++n)
      CHECK(hsc::compute_q_n(c, sigma, R, n).real() < bound);
  }
}

TEST_CASE("stability verdict follows the density contrast") {
  hsc::PhysicalParams p;
  p.rho_o = 2.0;
  p.rho_i = 1.0;
  CHECK(hsc::classify_stability(p) == hsc::Verdict::Stable);
  std::swap(p.rho_o, p.rho_i);
  CHECK(hsc::classify_stability(p) == hsc::Verdict::Unstable);
  p.rho_i = p.rho_o;
  CHECK(hsc::classify_stability(p) == hsc::Verdict::Neutral);

  DerivedCoeffs c = reference_coeffs();
  CHECK(hsc::classify_stability(c, 1.0, 2.0) == hsc::Verdict::Stable);
  std::swap(c.gamma_i, c.gamma_o);
  CHECK(hsc::classify_stability(c, 1.0, 2.0) == hsc::Verdict::Unstable);
}

TEST_CASE("linear propagator acts mode by mode") {
  const hsc::DispersionTable t =
      hsc::build_dispersion_table(reference_coeffs(), 1.0, 2.0, 64);
  const int N = 32;
  hsc::SpectralCoeffs c0 = hsc::SpectralCoeffs::zeros(N);
  c0.at(1) = {2e-3, 1e-3};
  c0.at(-1) = std::conj(c0.at(1));
  c0.at(3) = {0.0, 5e-4};
  c0.at(-3) = std::conj(c0.at(3));

  const hsc::SpectralCoeffs same = hsc::linear_propagator(t, c0, 0.0);
  for (int n = c0.n_min(); n <= c0.n_max(); ++n) CHECK(same.at(n) == c0.at(n));

  const hsc::SpectralCoeffs c1 = hsc::linear_propagator(t, c0, 1.0);
  const double decay = std::exp(-6.0 / 13.0);
  CHECK(std::abs(c1.at(1) - c0.at(1) * decay) <= 1e-16);
  CHECK(c1.at(-1) == std::conj(c1.at(1)));
  CHECK(std::abs(c1.at(0)) == 0.0);

  // rotation: the mode-1 phase advances by Im q_1 per unit time
  const hsc::DispersionTable tc =
      hsc::build_dispersion_table(coriolis_coeffs(), 1.0, 2.0, 64);
  const hsc::SpectralCoeffs r1 = hsc::linear_propagator(tc, c0, 1.0);
  const double dphase = std::arg(r1.at(1) / c0.at(1));
  CHECK(dphase == doctest::Approx(-9.0 / 89.0).epsilon(1e-12));

  hsc::SpectralCoeffs wide = hsc::SpectralCoeffs::zeros(256);
  wide.at(70) = {1e-3, 0.0};
  wide.at(-70) = {1e-3, 0.0};
  CHECK_THROWS_AS(hsc::linear_propagator(t, wide, 0.5), hsc::range_error);
  wide.at(70) = wide.at(-70) = {0.0, 0.0};
  CHECK_NOTHROW(hsc::linear_propagator(t, wide, 0.5));
}

TEST_CASE("fastest mode diagnostic") {
  const auto [n_stable, rate_stable] = hsc::fastest_growing_mode(
      hsc::build_dispersion_table(reference_coeffs(), 1.0, 2.0, 64));
  CHECK(n_stable == 1);
  CHECK(rate_stable == doctest::Approx(-6.0 / 13.0).epsilon(1e-14));

  DerivedCoeffs reversed = reference_coeffs();
  std::swap(reversed.gamma_i, reversed.gamma_o);
  const auto [n_un, rate_un] = hsc::fastest_growing_mode(
      hsc::build_dispersion_table(reversed, 1.0, 2.0, 64));
  CHECK(n_un == 1);
  CHECK(rate_un == doctest::Approx(6.0 / 13.0).epsilon(1e-14));

  DerivedCoeffs neutral = reference_coeffs();
  neutral.gamma_i = neutral.gamma_o = 0.5;
  const auto [n_z, rate_z] = hsc::fastest_growing_mode(
      hsc::build_dispersion_table(neutral, 1.0, 2.0, 64));
  CHECK(n_z == 1);
  CHECK(rate_z == 0.0);
}
