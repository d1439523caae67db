#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "hsc/params.hpp"
#include "hsc/spectral.hpp"

namespace hsc {

enum class Verdict { Stable, Unstable, Neutral };

const char* verdict_name(Verdict v);

struct ModeRecord {
  int n = 0;
  std::complex<double> l_n;
  double A_n = 0.0;
  double mu_n = 0.0;
  std::complex<double> q_n;
};

struct DispersionTable {
  int n_max = 0;
  double B = 0.0;
  double lambda_star = 0.0;
  Verdict verdict = Verdict::Neutral;
  std::vector<ModeRecord> modes;  // n = -n_max..-1, 1..n_max in ascending order

  const ModeRecord& mode(int n) const;
};

// Multiplier of the inner-trace/outer-flux composition at the circle:
//   l_n = (1 - R^{2n}) |theta_i|^2 / [(sign(n) alpha_i - i beta_i)(theta_o + R^{2n} conj(theta_o))]
// Evaluated in an R^{-2|n|}-normalized form so R^{2n} never overflows.
// |n| must be nonzero and <= 512 (range_error otherwise).
std::complex<double> compute_l_n(const DerivedCoeffs& c, double R, int n);

// Growth rate of mode n:
//   q_n = (A_n + i sign(n) B) / (A_n^2 + B^2) * mu(n),  q_0 := 0,
//   A_n = sign(n) (R^{2n}+1)/(R^{2n}-1) alpha_o + alpha_i,  B = beta_o - beta_i,
//   mu(n) = |n| (sigma - 2(gamma_o - gamma_i) - sigma n^2).
std::complex<double> compute_q_n(const DerivedCoeffs& c, double sigma, double R,
                                 int n);

// lambda* = 1 + 2 |gamma_o - gamma_i| / (alpha_o + alpha_i)
double spectral_bound(const DerivedCoeffs& c);

// Stable iff rho_o > rho_i, Unstable iff rho_i > rho_o, Neutral iff equal;
// cross-checked against the sign pattern of Re q_n for n <= n_max
// (internal_consistency_error on mismatch).
Verdict classify_stability(const PhysicalParams& p, int n_max = 128);
Verdict classify_stability(const DerivedCoeffs& c, double sigma, double R,
                           int n_max = 128);

DispersionTable build_dispersion_table(const DerivedCoeffs& c, double sigma,
                                       double R, int n_max = 128);

// rho_hat_n(t) = exp(q_n t) rho_hat_n(0). Nonzero modes beyond the table
// range raise range_error.
SpectralCoeffs linear_propagator(const DispersionTable& table,
                                 const SpectralCoeffs& rho0, double t);

// argmax over n >= 1 of Re q_n; ties toward smaller n.
std::pair<int, double> fastest_growing_mode(const DispersionTable& table);

}  // namespace hsc
