#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hsc/spectral.hpp"

using hsc::CircleFunction;
using hsc::SpectralCoeffs;
using cplx = std::complex<double>;

namespace {

CircleFunction sampled(int N, double (*f)(double)) {
  CircleFunction g = CircleFunction::zeros(N);
  for (int k = 0; k < N; ++k) g[k] = f(g.theta(k));
  return g;
}

CircleFunction random_function(int N, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CircleFunction f = CircleFunction::zeros(N);
  for (double& v : f.v) v = u(gen);
  return f;
}

double max_diff(const CircleFunction& a, const CircleFunction& b) {
  double m = 0.0;
  for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_CASE("grid size must be a power of two, at least 16") {
  CHECK_NOTHROW(hsc::check_grid_size(16));
  CHECK_NOTHROW(hsc::check_grid_size(128));
  CHECK_THROWS_AS(hsc::check_grid_size(8), hsc::validation_error);
  CHECK_THROWS_AS(hsc::check_grid_size(20), hsc::validation_error);
  CHECK_THROWS_AS(hsc::check_grid_size(0), hsc::validation_error);
}

TEST_CASE("constant transforms to a pure mean coefficient") {
  CircleFunction f = CircleFunction::zeros(32);
  for (double& v : f.v) v = 1.0;
  const SpectralCoeffs c = hsc::to_spectral(f);
  for (int n = c.n_min(); n <= c.n_max(); ++n) {
    const cplx want = (n == 0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    CHECK(std::abs(c.at(n) - want) <= 1e-15);
  }
}

TEST_CASE("cosine lands on the conjugate mode pair") {
  const int N = 32;
  const CircleFunction f = sampled(N, [](double t) { return std::cos(t); });
  const SpectralCoeffs c = hsc::to_spectral(f);
  CHECK(std::abs(c.at(1) - cplx(0.5, 0.0)) <= 1e-15);
  CHECK(std::abs(c.at(-1) - cplx(0.5, 0.0)) <= 1e-15);
  for (int n = c.n_min(); n <= c.n_max(); ++n) {
    if (std::abs(n) == 1) continue;
    CHECK(std::abs(c.at(n)) <= 1e-15);
  }
}

TEST_CASE("random data round-trips through the transform") {
  for (int N : {16, 64, 256}) {
    const CircleFunction f = random_function(N, 7u + static_cast<unsigned>(N));
    const CircleFunction g = hsc::from_spectral(hsc::to_spectral(f));
    CHECK(max_diff(f, g) <= 1e-12 * hsc::max_abs(f));
  }
}

TEST_CASE("Parseval identity holds for band-limited data") {
  const int N = 64;
  // dealias first so every surviving mode appears in both signed slots
  const SpectralCoeffs c =
      hsc::dealias(hsc::to_spectral(random_function(N, 123u)));
  const CircleFunction f = hsc::from_spectral(c);
  double grid = 0.0;
  for (int k = 0; k < N; ++k) grid += f[k] * f[k];
  grid /= N;
  double modes = 0.0;
  for (int n = c.n_min(); n <= c.n_max(); ++n) modes += std::norm(c.at(n));
  CHECK(std::abs(grid - modes) <= 1e-12 * modes);
}

TEST_CASE("differentiation of the basic modes") {
  const int N = 32;
  const CircleFunction c1 = sampled(N, [](double t) { return std::cos(t); });
  const CircleFunction want1 = sampled(N, [](double t) { return -std::sin(t); });
  CHECK(max_diff(hsc::differentiate(c1, 1), want1) <= 1e-13);

  const CircleFunction want2 = sampled(N, [](double t) { return -std::cos(t); });
  CHECK(max_diff(hsc::differentiate(c1, 2), want2) <= 1e-13);

  SpectralCoeffs m3 = SpectralCoeffs::zeros(N);
  m3.at(3) = {0.25, -0.5};
  m3.at(-3) = std::conj(m3.at(3));
  const SpectralCoeffs d = hsc::differentiate(m3, 1);
  CHECK(std::abs(d.at(3) - cplx(0.0, 3.0) * m3.at(3)) <= 1e-15);
  CHECK(std::abs(d.at(-3) - cplx(0.0, -3.0) * m3.at(-3)) <= 1e-15);
}

TEST_CASE("derivative properties: constants, composition, zero mean") {
  const int N = 64;
  CircleFunction c = CircleFunction::zeros(N);
  for (double& v : c.v) v = 3.5;
  CHECK(hsc::max_abs(hsc::differentiate(c, 1)) <= 1e-14);
  CHECK(hsc::max_abs(hsc::differentiate(c, 2)) <= 1e-14);

  // band-limit the data so first-derivative-twice matches the second
  // derivative without Nyquist ambiguity
  const CircleFunction f =
      hsc::from_spectral(hsc::dealias(hsc::to_spectral(random_function(N, 5u))));
  const CircleFunction dd = hsc::differentiate(hsc::differentiate(f, 1), 1);
  const CircleFunction d2 = hsc::differentiate(f, 2);
  CHECK(max_diff(dd, d2) <= 1e-10 * std::max(1.0, hsc::max_abs(d2)));

  CHECK(std::abs(hsc::mean(hsc::differentiate(f, 1))) <= 1e-14);
  CHECK(std::abs(hsc::to_spectral(hsc::differentiate(f, 1)).at(0)) <= 1e-14);
}

TEST_CASE("multiplier application is coefficientwise") {
  const int N = 32;
  const CircleFunction f = random_function(N, 11u);
  const SpectralCoeffs c = hsc::to_spectral(f);

  const SpectralCoeffs same =
      hsc::apply_multiplier(c, [](int) { return cplx(1.0, 0.0); });
  for (int n = c.n_min(); n <= c.n_max(); ++n)
    CHECK(same.at(n) == c.at(n));

  // resolvent-style multiplier on a single mode: lambda = 1 against the
  // rate -150/49 gives 49/199
  SpectralCoeffs unit = SpectralCoeffs::zeros(N);
  unit.at(2) = {1.0, 0.0};
  unit.at(-2) = {1.0, 0.0};
  const double q2 = -150.0 / 49.0;
  const SpectralCoeffs r = hsc::apply_multiplier(
      unit, [&](int n) { return std::abs(n) == 2 ? 1.0 / (1.0 - q2) : 1.0; });
  CHECK(std::abs(r.at(2) - cplx(49.0 / 199.0, 0.0)) <= 1e-15);

  std::vector<cplx> table(static_cast<size_t>(N) + 1, cplx(0.0, 0.0));
  table[static_cast<size_t>(2 + N / 2)] = {2.0, 0.0};
  table[static_cast<size_t>(-2 + N / 2)] = {2.0, 0.0};
  const SpectralCoeffs doubled = hsc::apply_multiplier(unit, table);
  CHECK(doubled.at(2) == cplx(2.0, 0.0));
  CHECK(doubled.at(1) == cplx(0.0, 0.0));
}

TEST_CASE("mean is the zeroth coefficient") {
  const int N = 32;
  CircleFunction c = CircleFunction::zeros(N);
  for (double& v : c.v) v = -2.25;
  CHECK(hsc::mean(c) == doctest::Approx(-2.25).epsilon(1e-15));

  CHECK(std::abs(hsc::mean(sampled(N, [](double t) { return std::cos(t); }))) <=
        1e-15);
  CHECK(hsc::mean(sampled(N, [](double t) { return 1.0 + std::cos(t); })) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dealias zeroes the upper third and is idempotent") {
  const int N = 32;
  SpectralCoeffs c = SpectralCoeffs::zeros(N);
  c.at(1) = {1.0, 0.0};
  c.at(-1) = {1.0, 0.0};
  c.at(N / 2) = {0.5, 0.0};
  c.at(-N / 2) = {0.5, 0.0};
  c.at(12) = {0.0, 1.0};
  c.at(-12) = {0.0, -1.0};
  const SpectralCoeffs d = hsc::dealias(c);
  CHECK(d.at(1) == c.at(1));
  CHECK(d.at(N / 2) == cplx(0.0, 0.0));
  CHECK(d.at(12) == cplx(0.0, 0.0));  // 12 > 32/3
  CHECK(d.at(10) == cplx(0.0, 0.0));
  const SpectralCoeffs dd = hsc::dealias(d);
  for (int n = c.n_min(); n <= c.n_max(); ++n) CHECK(dd.at(n) == d.at(n));
}

TEST_CASE("reconstruction rejects broken Hermitian symmetry") {
  SpectralCoeffs c = SpectralCoeffs::zeros(32);
  c.at(2) = {1.0, 0.0};  // missing conjugate partner
  CHECK_THROWS_AS(hsc::from_spectral(c), hsc::symmetry_error);
}

TEST_CASE("series evaluation matches the grid samples") {
  const int N = 32;
  const SpectralCoeffs c =
      hsc::dealias(hsc::to_spectral(random_function(N, 99u)));
  const CircleFunction f = hsc::from_spectral(c);
  for (int k = 0; k < N; ++k)
    CHECK(std::abs(hsc::eval_at(c, f.theta(k)) - f[k]) <= 1e-12);
  // and at an off-grid angle against a hand-built series
  SpectralCoeffs one = SpectralCoeffs::zeros(N);
  one.at(3) = {0.5, 0.0};
  one.at(-3) = {0.5, 0.0};
  const double th = 0.3777;
  CHECK(hsc::eval_at(one, th) == doctest::Approx(std::cos(3.0 * th)).epsilon(1e-14));
}

TEST_CASE("dense derivative matrix agrees with the transform path") {
  const int N = 16;
  for (int order : {1, 2}) {
    const std::vector<double> D = hsc::differentiation_matrix(N, order);
    const CircleFunction f = random_function(N, 3u + static_cast<unsigned>(order));
    const CircleFunction want = hsc::differentiate(f, order);
    for (int i = 0; i < N; ++i) {
      double acc = 0.0;
      for (int j = 0; j < N; ++j) acc += D[static_cast<size_t>(i) * N + j] * f[j];
      CHECK(std::abs(acc - want[i]) <= 1e-11);
    }
  }
}
