#include <cmath>
#include <complex>
#include <numbers>

#include "hsc/elliptic.hpp"

namespace hsc {

std::complex<double> inner_mode_coefficient(const DerivedCoeffs& c, int n) {
  const double abs2 = c.alpha_i * c.alpha_i + c.beta_i * c.beta_i;
  return abs2 / std::complex<double>(-std::abs(n) * c.alpha_i, n * c.beta_i);
}

void outer_mode_coefficients(const DerivedCoeffs& c, double R, int n,
                             std::complex<double>& grow,
                             std::complex<double>& decay) {
  // coefficients of r^{n} and r^{-n}; evaluated with t = R^{-2|n|} so R^{2n}
  // never appears
  const std::complex<double> to(c.alpha_o, c.beta_o);
  const std::complex<double> tb = std::conj(to);
  const double t = std::pow(R, -2.0 * std::abs(n));
  if (n >= 0) {
    grow = t * to / (t * to + tb);
    decay = tb / (tb + t * to);
  } else {
    grow = to / (to + t * tb);
    decay = t * tb / (t * tb + to);
  }
}

DiskField solve_inner_exact(const DerivedCoeffs& c, const SpectralCoeffs& h,
                            int M) {
  const RadialLayout lay = make_disk_layout(M);
  const int N = h.N;
  DiskField f;
  f.r = lay.r;
  f.vals.setConstant(M, N, h.at(0).real());
  for (int n = 1; n <= N / 2; ++n) {
    const std::complex<double> cn = h.at(n) * inner_mode_coefficient(c, n);
    if (cn == std::complex<double>(0.0, 0.0)) continue;
    for (int j = 0; j < M; ++j) {
      const double rn = std::pow(lay.r[static_cast<size_t>(j)], n);
      for (int k = 0; k < N; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / N;
        const std::complex<double> e(std::cos(n * theta), std::sin(n * theta));
        f.vals(j, k) += 2.0 * (cn * e).real() * rn;
      }
    }
  }
  return f;
}

AnnulusField solve_outer_exact(const DerivedCoeffs& c, const SpectralCoeffs& g,
                               double R, int M) {
  const RadialLayout lay = make_annulus_layout(M, R);
  const int N = g.N;
  AnnulusField f;
  f.r = lay.r;
  f.R = R;
  f.vals.setConstant(M, N, g.at(0).real());
  const std::complex<double> to(c.alpha_o, c.beta_o);
  const std::complex<double> tb = std::conj(to);
  for (int n = 1; n <= N / 2; ++n) {
    if (g.at(n) == std::complex<double>(0.0, 0.0)) continue;
    const double t = std::pow(R, -2.0 * n);
    // growing part written as (r/R^2)^n * theta_o/(t theta_o + conj theta_o)
    // so no intermediate reaches R^{2n}
    const std::complex<double> cg = to / (t * to + tb);
    const std::complex<double> cd = tb / (tb + t * to);
    for (int j = 0; j < M; ++j) {
      const double r = lay.r[static_cast<size_t>(j)];
      const std::complex<double> radial =
          cg * std::pow(r / (R * R), n) + cd * std::pow(r, -double(n));
      for (int k = 0; k < N; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / N;
        const std::complex<double> e(std::cos(n * theta), std::sin(n * theta));
        f.vals(j, k) += 2.0 * (g.at(n) * radial * e).real();
      }
    }
  }
  return f;
}

CircleFunction projection(const InterfaceShape& s, const CircleFunction& h) {
  const int N = s.size();
  if (h.size() != N)
    throw validation_error("projection: shape and data sizes differ");
  const CircleFunction d1 = differentiate(s.rho, 1);
  double L = 0.0, Ih = 0.0;
  std::vector<double> w(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double u = 1.0 + s.rho[k];
    w[static_cast<size_t>(k)] = std::sqrt(d1[k] * d1[k] + u * u);
    L += w[static_cast<size_t>(k)];
    Ih += h[k] * u;
  }
  const double tp = 2.0 * std::numbers::pi / N;
  L *= tp;
  Ih *= tp;
  CircleFunction out = CircleFunction::zeros(N);
  for (int k = 0; k < N; ++k)
    out[k] = w[static_cast<size_t>(k)] / ((1.0 + s.rho[k]) * L) * Ih;
  return out;
}

Point recover_velocity(const DerivedCoeffs& c, Point g, Phase which) {
  const double a = which == Phase::Inner ? c.alpha_i : c.alpha_o;
  const double b = which == Phase::Inner ? c.beta_i : c.beta_o;
  const double inv = 1.0 / (a * a + b * b);
  // z x g = (-g1, g0)
  return {inv * (-a * g[0] + b * g[1]), inv * (-a * g[1] - b * g[0])};
}

std::vector<Point> recover_velocity(const DerivedCoeffs& c,
                                    const std::vector<Point>& grad, Phase which) {
  std::vector<Point> out(grad.size());
  for (size_t i = 0; i < grad.size(); ++i)
    out[i] = recover_velocity(c, grad[i], which);
  return out;
}

DiskField to_hydrostatic_pressure(const DerivedCoeffs& c, const DiskField& field,
                                  Phase which) {
  const double gamma = which == Phase::Inner ? c.gamma_i : c.gamma_o;
  DiskField out = field;
  for (int j = 0; j < out.vals.rows(); ++j) {
    const double r2 = out.r[static_cast<size_t>(j)] * out.r[static_cast<size_t>(j)];
    for (int k = 0; k < out.vals.cols(); ++k) out.vals(j, k) += gamma * r2;
  }
  return out;
}

AnnulusField to_hydrostatic_pressure(const DerivedCoeffs& c,
                                     const AnnulusField& field, Phase which) {
  const double gamma = which == Phase::Inner ? c.gamma_i : c.gamma_o;
  AnnulusField out = field;
  for (int j = 0; j < out.vals.rows(); ++j) {
    const double r2 = out.r[static_cast<size_t>(j)] * out.r[static_cast<size_t>(j)];
    for (int k = 0; k < out.vals.cols(); ++k) out.vals(j, k) += gamma * r2;
  }
  return out;
}

}  // namespace hsc
