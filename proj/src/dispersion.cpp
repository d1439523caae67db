#include "hsc/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hsc {

namespace {

constexpr int kModeGuard = 512;

void check_mode(int n) {
  if (n == 0) throw range_error("mode index must be nonzero");
  if (std::abs(n) > kModeGuard)
    throw range_error("mode index |n| = " + std::to_string(std::abs(n)) +
                      " beyond the overflow guard " + std::to_string(kModeGuard));
}

// R^{-2|n|}; underflows to 0 harmlessly for large |n|.
double small_power(double R, int n) {
  return std::pow(R, -2.0 * std::abs(n));
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    default: return "Neutral";
  }
}

const ModeRecord& DispersionTable::mode(int n) const {
  if (n == 0 || std::abs(n) > n_max)
    throw range_error("dispersion table has no mode " + std::to_string(n));
  // layout: -n_max..-1 then 1..n_max
  const size_t idx = n < 0 ? static_cast<size_t>(n + n_max)
                           : static_cast<size_t>(n_max + n - 1);
  return modes[idx];
}

std::complex<double> compute_l_n(const DerivedCoeffs& c, double R, int n) {
  check_mode(n);
  const std::complex<double> theta_o(c.alpha_o, c.beta_o);
  const double abs_ti2 = c.alpha_i * c.alpha_i + c.beta_i * c.beta_i;
  const double t = small_power(R, n);
  const double sgn = n > 0 ? 1.0 : -1.0;
  const std::complex<double> inner(sgn * c.alpha_i, -c.beta_i);
  if (n > 0) {
    // multiply numerator and denominator of the printed form by R^{-2n}
    return (t - 1.0) * abs_ti2 / (inner * (t * theta_o + std::conj(theta_o)));
  }
  return (1.0 - t) * abs_ti2 / (inner * (theta_o + t * std::conj(theta_o)));
}

std::complex<double> compute_q_n(const DerivedCoeffs& c, double sigma, double R,
                                 int n) {
  if (n == 0) return {0.0, 0.0};
  check_mode(n);
  const double t = small_power(R, n);
  const double A = (1.0 + t) / (1.0 - t) * c.alpha_o + c.alpha_i;
  const double B = c.beta_o - c.beta_i;
  const double an = std::abs(n);
  const double mu = an * (sigma - 2.0 * (c.gamma_o - c.gamma_i) - sigma * an * an);
  const double sgn = n > 0 ? 1.0 : -1.0;
  return std::complex<double>(A, sgn * B) / (A * A + B * B) * mu;
}

double spectral_bound(const DerivedCoeffs& c) {
  return 1.0 + 2.0 * std::abs(c.gamma_o - c.gamma_i) / (c.alpha_o + c.alpha_i);
}

namespace {

Verdict verdict_from_spectrum(const DerivedCoeffs& c, double sigma, double R,
                              int n_max) {
  // scale for deciding "Re q_1 == 0"
  const double scale = std::abs(compute_q_n(c, sigma, R, 2).real()) + 1.0;
  double max_re = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n)
    max_re = std::max(max_re, compute_q_n(c, sigma, R, n).real());
  if (max_re > 1e-12 * scale) return Verdict::Unstable;
  if (std::abs(compute_q_n(c, sigma, R, 1).real()) <= 1e-12 * scale)
    return Verdict::Neutral;
  return Verdict::Stable;
}

Verdict classify_checked(const DerivedCoeffs& c, double sigma, double R,
                         int n_max) {
  Verdict rule;
  if (c.gamma_o > c.gamma_i)
    rule = Verdict::Stable;
  else if (c.gamma_i > c.gamma_o)
    rule = Verdict::Unstable;
  else
    rule = Verdict::Neutral;
  const Verdict spec = verdict_from_spectrum(c, sigma, R, n_max);
  if (spec != rule)
    throw internal_consistency_error(
        std::string("stability verdict ") + verdict_name(rule) +
        " contradicts the computed spectrum sign pattern (" + verdict_name(spec) +
        ")");
  return rule;
}

}  // namespace

Verdict classify_stability(const PhysicalParams& p, int n_max) {
  const ProblemSetup s = make_setup(p);
  return classify_checked(s.coeffs, s.sigma, s.R, n_max);
}

Verdict classify_stability(const DerivedCoeffs& c, double sigma, double R,
                           int n_max) {
  return classify_checked(c, sigma, R, n_max);
}

DispersionTable build_dispersion_table(const DerivedCoeffs& c, double sigma,
                                       double R, int n_max) {
  if (n_max < 1 || n_max > kModeGuard)
    throw validation_error("dispersion table needs 1 <= n_max <= 512, got " +
                           std::to_string(n_max));
  DispersionTable t;
  t.n_max = n_max;
  t.B = c.beta_o - c.beta_i;
  t.lambda_star = spectral_bound(c);
  t.verdict = classify_checked(c, sigma, R, n_max);
  t.modes.reserve(static_cast<size_t>(2 * n_max));
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) continue;
    ModeRecord m;
    m.n = n;
    m.l_n = compute_l_n(c, R, n);
    const double tp = small_power(R, n);
    m.A_n = (1.0 + tp) / (1.0 - tp) * c.alpha_o + c.alpha_i;
    const double an = std::abs(n);
    m.mu_n = an * (sigma - 2.0 * (c.gamma_o - c.gamma_i) - sigma * an * an);
    m.q_n = compute_q_n(c, sigma, R, n);
    t.modes.push_back(m);
  }
  return t;
}

SpectralCoeffs linear_propagator(const DispersionTable& table,
                                 const SpectralCoeffs& rho0, double t) {
  if (t < 0.0) throw validation_error("linear_propagator: t must be >= 0");
  SpectralCoeffs out = rho0;
  for (int n = -rho0.N / 2; n <= rho0.N / 2; ++n) {
    if (n == 0) continue;  // q_0 = 0
    if (std::abs(n) > table.n_max) {
      if (std::abs(rho0.at(n)) != 0.0)
        throw range_error("linear_propagator: mode " + std::to_string(n) +
                          " outside table range n_max = " +
                          std::to_string(table.n_max));
      continue;
    }
    out.at(n) = rho0.at(n) * std::exp(table.mode(n).q_n * t);
  }
  return out;
}

std::pair<int, double> fastest_growing_mode(const DispersionTable& table) {
  int best = 1;
  double best_re = table.mode(1).q_n.real();
  for (int n = 2; n <= table.n_max; ++n) {
    const double re = table.mode(n).q_n.real();
    if (re > best_re) {
      best = n;
      best_re = re;
    }
  }
  return {best, best_re};
}

}  // namespace hsc
