#include "hsc/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace hsc {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;  // r2c
  fftw_plan bwd = nullptr;  // c2r
};

// FFTW plans are cached per size for the process lifetime. Plans are created
// with FFTW_UNALIGNED so they can execute on any caller-provided buffers.
PlanPair& plans_for(int N) {
  static std::map<int, PlanPair> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  std::vector<double> re(static_cast<size_t>(N));
  std::vector<std::complex<double>> cx(static_cast<size_t>(N / 2 + 1));
  PlanPair p;
  p.fwd = fftw_plan_dft_r2c_1d(N, re.data(),
                               reinterpret_cast<fftw_complex*>(cx.data()),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_c2r_1d(N, reinterpret_cast<fftw_complex*>(cx.data()),
                               re.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(N, p).first->second;
}

}  // namespace

void check_grid_size(int N) {
  if (N < 16 || (N & (N - 1)) != 0)
    throw validation_error("grid size N must be a power of two with N >= 16, got " +
                           std::to_string(N));
}

CircleFunction::CircleFunction(std::vector<double> values) : v(std::move(values)) {
  check_grid_size(size());
  for (double x : v)
    if (!std::isfinite(x)) throw validation_error("CircleFunction: non-finite sample");
}

CircleFunction CircleFunction::zeros(int N) {
  check_grid_size(N);
  CircleFunction f;
  f.v.assign(static_cast<size_t>(N), 0.0);
  return f;
}

double CircleFunction::theta(int k) const {
  return 2.0 * std::numbers::pi * k / size();
}

SpectralCoeffs SpectralCoeffs::zeros(int N) {
  check_grid_size(N);
  SpectralCoeffs s;
  s.N = N;
  s.c.assign(static_cast<size_t>(N + 1), {0.0, 0.0});
  return s;
}

SpectralCoeffs to_spectral(const CircleFunction& f) {
  const int N = f.size();
  check_grid_size(N);
  std::vector<double> re(f.v);
  std::vector<std::complex<double>> cx(static_cast<size_t>(N / 2 + 1));
  fftw_execute_dft_r2c(plans_for(N).fwd, re.data(),
                       reinterpret_cast<fftw_complex*>(cx.data()));
  SpectralCoeffs out = SpectralCoeffs::zeros(N);
  out.at(0) = cx[0] / double(N);
  for (int n = 1; n < N / 2; ++n) {
    out.at(n) = cx[static_cast<size_t>(n)] / double(N);
    out.at(-n) = std::conj(out.at(n));
  }
  const double ny = cx[static_cast<size_t>(N / 2)].real() / double(N);
  out.at(N / 2) = 0.5 * ny;
  out.at(-N / 2) = 0.5 * ny;
  return out;
}

CircleFunction from_spectral(const SpectralCoeffs& s) {
  const int N = s.N;
  check_grid_size(N);
  double scale = 0.0;
  for (const auto& z : s.c) scale = std::max(scale, std::abs(z));
  const double tol = 1e-10 * std::max(1.0, scale);
  for (int n = 0; n <= N / 2; ++n) {
    const double dev = std::abs(s.at(-n) - std::conj(s.at(n)));
    if (dev > tol)
      throw symmetry_error("from_spectral: Hermitian symmetry violated at mode " +
                           std::to_string(n) + " by " + std::to_string(dev));
  }
  // unnormalized c2r reconstructs X_0 + 2 sum Re(X_n e^{i n theta}) + Nyquist,
  // so feeding the coefficients directly yields the series values
  std::vector<std::complex<double>> cx(static_cast<size_t>(N / 2 + 1));
  cx[0] = {s.at(0).real(), 0.0};
  for (int n = 1; n < N / 2; ++n) cx[static_cast<size_t>(n)] = s.at(n);
  cx[static_cast<size_t>(N / 2)] = {(s.at(N / 2) + s.at(-N / 2)).real(), 0.0};
  std::vector<double> re(static_cast<size_t>(N));
  fftw_execute_dft_c2r(plans_for(N).bwd,
                       reinterpret_cast<fftw_complex*>(cx.data()), re.data());
  CircleFunction f;
  f.v = std::move(re);
  return f;
}

SpectralCoeffs differentiate(const SpectralCoeffs& s, int order) {
  if (order != 1 && order != 2)
    throw validation_error("differentiate: order must be 1 or 2");
  SpectralCoeffs out = s;
  for (int n = -s.N / 2; n <= s.N / 2; ++n) {
    std::complex<double> m(0.0, double(n));
    out.at(n) = s.at(n) * (order == 1 ? m : m * m);
  }
  return out;
}

CircleFunction differentiate(const CircleFunction& f, int order) {
  return from_spectral(differentiate(to_spectral(f), order));
}

SpectralCoeffs apply_multiplier(const SpectralCoeffs& s,
                                const std::vector<std::complex<double>>& M) {
  if (M.size() != s.c.size())
    throw validation_error("apply_multiplier: multiplier length mismatch");
  SpectralCoeffs out = s;
  for (size_t i = 0; i < s.c.size(); ++i) out.c[i] = s.c[i] * M[i];
  return out;
}

SpectralCoeffs apply_multiplier(
    const SpectralCoeffs& s, const std::function<std::complex<double>(int)>& M) {
  SpectralCoeffs out = s;
  for (int n = -s.N / 2; n <= s.N / 2; ++n) out.at(n) = s.at(n) * M(n);
  return out;
}

double mean(const CircleFunction& f) {
  double acc = 0.0;
  for (double x : f.v) acc += x;
  return acc / f.size();
}

SpectralCoeffs dealias(const SpectralCoeffs& s) {
  SpectralCoeffs out = s;
  const int cut = s.N / 3;
  for (int n = -s.N / 2; n <= s.N / 2; ++n)
    if (std::abs(n) > cut) out.at(n) = 0.0;
  return out;
}

double eval_at(const SpectralCoeffs& s, double theta) {
  double acc = s.at(0).real();
  for (int n = 1; n <= s.N / 2; ++n) {
    const std::complex<double> e(std::cos(n * theta), std::sin(n * theta));
    acc += 2.0 * (s.at(n) * e).real();
  }
  return acc;
}

double max_abs(const CircleFunction& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> differentiation_matrix(int N, int order) {
  check_grid_size(N);
  std::vector<double> D(static_cast<size_t>(N) * N);
  CircleFunction delta = CircleFunction::zeros(N);
  for (int j = 0; j < N; ++j) {
    delta.v.assign(static_cast<size_t>(N), 0.0);
    delta[j] = 1.0;
    CircleFunction col = differentiate(delta, order);
    for (int i = 0; i < N; ++i) D[static_cast<size_t>(i) * N + j] = col[i];
  }
  return D;
}

}  // namespace hsc
