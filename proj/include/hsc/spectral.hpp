#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hsc/errors.hpp"

namespace hsc {

// Samples of a real 2pi-periodic function at theta_k = 2*pi*k/N.
// N must be a power of two, N >= 16.
struct CircleFunction {
  std::vector<double> v;

  CircleFunction() = default;
  explicit CircleFunction(std::vector<double> values);

  static CircleFunction zeros(int N);

  int size() const { return static_cast<int>(v.size()); }
  double theta(int k) const;
  double& operator[](int k) { return v[k]; }
  double operator[](int k) const { return v[k]; }
};

// Two-sided coefficient storage for modes n in [-N/2, N/2], index n + N/2.
// Real data has Hermitian symmetry c_{-n} = conj(c_n); the Nyquist content is
// split evenly between +N/2 and -N/2 so both entries are real and equal.
struct SpectralCoeffs {
  int N = 0;
  std::vector<std::complex<double>> c;

  SpectralCoeffs() = default;
  static SpectralCoeffs zeros(int N);

  int n_min() const { return -N / 2; }
  int n_max() const { return N / 2; }
  std::complex<double>& at(int n) { return c[static_cast<size_t>(n + N / 2)]; }
  const std::complex<double>& at(int n) const {
    return c[static_cast<size_t>(n + N / 2)];
  }
};

void check_grid_size(int N);

SpectralCoeffs to_spectral(const CircleFunction& f);

// Throws symmetry_error if Hermitian symmetry is violated beyond 1e-10
// (relative to the coefficient magnitude).
CircleFunction from_spectral(const SpectralCoeffs& c);

// Spectral differentiation, multiplier (i n)^order; order must be 1 or 2.
CircleFunction differentiate(const CircleFunction& f, int order);
SpectralCoeffs differentiate(const SpectralCoeffs& c, int order);

// Coefficientwise product c_n * M_n. M is indexed like SpectralCoeffs::c.
SpectralCoeffs apply_multiplier(const SpectralCoeffs& c,
                                const std::vector<std::complex<double>>& M);
SpectralCoeffs apply_multiplier(
    const SpectralCoeffs& c,
    const std::function<std::complex<double>(int)>& M);

double mean(const CircleFunction& f);

// Zeroes all modes with |n| > N/3 (two-thirds rule). Idempotent.
SpectralCoeffs dealias(const SpectralCoeffs& c);

// Evaluate the truncated series at an arbitrary angle.
double eval_at(const SpectralCoeffs& c, double theta);

// max_k |f_k|
double max_abs(const CircleFunction& f);

// Dense N x N matrix of the spectral derivative acting on grid values,
// column j = differentiate(delta_j, order). Consistent with differentiate()
// by construction.
std::vector<double> differentiation_matrix(int N, int order);

}  // namespace hsc
