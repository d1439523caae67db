#include "hsc/geometry.hpp"

#include <cmath>
#include <numbers>

namespace hsc {

namespace {

constexpr double kA = kCollarHalfWidth;

// Dealias a pointwise product back onto the safe band.
CircleFunction dz(const CircleFunction& f) {
  return from_spectral(dealias(to_spectral(f)));
}

CircleFunction pointwise(const CircleFunction& a, const CircleFunction& b) {
  CircleFunction out = a;
  for (int k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
  return dz(out);
}

}  // namespace

double cutoff(double s) {
  const double u = std::abs(s);
  if (u <= kA) return 1.0;
  if (u >= 3.0 * kA) return 0.0;
  const double t = (u - kA) / (2.0 * kA);
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double cutoff_d1(double s) {
  const double u = std::abs(s);
  if (u <= kA || u >= 3.0 * kA) return 0.0;
  const double t = (u - kA) / (2.0 * kA);
  const double dp = 30.0 * t * t * (1.0 - t) * (1.0 - t);
  return -dp * (s > 0 ? 1.0 : -1.0) / (2.0 * kA);
}

double cutoff_d2(double s) {
  const double u = std::abs(s);
  if (u <= kA || u >= 3.0 * kA) return 0.0;
  const double t = (u - kA) / (2.0 * kA);
  const double ddp = 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
  return -ddp / (4.0 * kA * kA);
}

InterfaceShape::InterfaceShape(CircleFunction r) : rho(std::move(r)) {
  for (double v : rho.v)
    if (!std::isfinite(v))
      throw validation_error("InterfaceShape: rho has a non-finite entry");
  const double m = max_abs(rho);
  if (!(m < 1.0 / 8.0))
    throw validation_error("InterfaceShape: ||rho||_inf = " + std::to_string(m) +
                           " must stay below 1/8");
}

HanzawaMap::HanzawaMap(InterfaceShape s)
    : shape(std::move(s)), rho_hat(to_spectral(shape.rho)) {}

CircleFunction curvature_functional(const InterfaceShape& s, const DerivedCoeffs& c,
                                    double sigma) {
  const CircleFunction& rho = s.rho;
  const CircleFunction d1 = differentiate(rho, 1);
  const CircleFunction d2 = differentiate(rho, 2);
  const int N = rho.size();

  CircleFunction u = rho;
  for (int k = 0; k < N; ++k) u[k] = 1.0 + rho[k];

  const CircleFunction u2 = pointwise(u, u);
  const CircleFunction d1sq = pointwise(d1, d1);
  const CircleFunction ud2 = pointwise(u, d2);

  const double dgamma = c.gamma_o - c.gamma_i;
  CircleFunction out = CircleFunction::zeros(N);
  for (int k = 0; k < N; ++k) {
    const double base = u2[k] + d1sq[k];
    const double den = base * std::sqrt(std::max(base, 0.0));
    if (!(den >= 1e-14))
      throw singular_geometry_error(
          "curvature_functional: denominator " + std::to_string(den) +
          " below 1e-14 at node " + std::to_string(k));
    const double num = u2[k] + 2.0 * d1sq[k] - ud2[k];
    out[k] = sigma * num / den + dgamma * u2[k];
  }
  return from_spectral(dealias(to_spectral(out)));
}

CircleFunction linearized_curvature(const CircleFunction& h, double sigma,
                                    const DerivedCoeffs& c) {
  const double dgamma = c.gamma_o - c.gamma_i;
  SpectralCoeffs hh = to_spectral(h);
  SpectralCoeffs out = apply_multiplier(hh, [&](int n) -> std::complex<double> {
    return sigma * (double(n) * n - 1.0) + 2.0 * dgamma;
  });
  return from_spectral(out);
}

NormalData normal_data(const InterfaceShape& s) {
  const CircleFunction& rho = s.rho;
  const CircleFunction d1 = differentiate(rho, 1);
  const int N = rho.size();
  NormalData nd;
  nd.nu.resize(static_cast<size_t>(N));
  nd.tau.resize(static_cast<size_t>(N));
  nd.grad_norm = CircleFunction::zeros(N);
  for (int k = 0; k < N; ++k) {
    const double th = rho.theta(k);
    const double u = 1.0 + rho[k];
    const Point er{std::cos(th), std::sin(th)};
    const Point et{-std::sin(th), std::cos(th)};
    const double len = std::sqrt(u * u + d1[k] * d1[k]);
    nd.nu[static_cast<size_t>(k)] = {(u * er[0] - d1[k] * et[0]) / len,
                                     (u * er[1] - d1[k] * et[1]) / len};
    const Point& nu = nd.nu[static_cast<size_t>(k)];
    nd.tau[static_cast<size_t>(k)] = {nu[1], -nu[0]};
    nd.grad_norm[k] = len / u;
  }
  return nd;
}

Point hanzawa_forward(const HanzawaMap& m, Point x) {
  const double r = std::hypot(x[0], x[1]);
  const double phi = cutoff(r - 1.0);
  if (r == 0.0 || phi == 0.0) return x;
  const double theta = std::atan2(x[1], x[0]);
  const double f = r + phi * eval_at(m.rho_hat, theta);
  return {f * x[0] / r, f * x[1] / r};
}

Point hanzawa_inverse(const HanzawaMap& m, Point y) {
  const double ry = std::hypot(y[0], y[1]);
  // The map is the identity outside the collar, and maps the collar onto
  // itself (f is increasing with f(1 +- 3a) = 1 +- 3a).
  if (ry == 0.0 || ry <= 1.0 - 3.0 * kA || ry >= 1.0 + 3.0 * kA) return y;
  const double theta = std::atan2(y[1], y[0]);
  const double rho = eval_at(m.rho_hat, theta);

  auto f = [&](double r) { return r + cutoff(r - 1.0) * rho - ry; };
  const double phi_here = cutoff(ry - 1.0);
  double lo = std::max(0.0, ry - 2.0 * kA);
  double hi = ry + 2.0 * kA;
  double flo = f(lo), fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0)
    throw inversion_error("hanzawa_inverse: failed to bracket the ray radius");
  double r = ry - phi_here * rho;  // first guess
  r = std::min(std::max(r, lo), hi);
  for (int it = 0; it < 100; ++it) {
    const double fr = f(r);
    if (std::abs(fr) < 1e-14 * std::max(1.0, ry)) {
      const double s = r / ry;
      return {y[0] * s, y[1] * s};
    }
    if (fr > 0.0)
      hi = r;
    else
      lo = r;
    const double df = 1.0 + cutoff_d1(r - 1.0) * rho;
    double next = r - fr / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
  }
  throw inversion_error("hanzawa_inverse: no convergence within 100 iterations");
}

double enclosed_area(const InterfaceShape& s) {
  const int N = s.size();
  double acc = 0.0;
  for (int k = 0; k < N; ++k) {
    const double u = 1.0 + s.rho[k];
    acc += u * u;
  }
  return std::numbers::pi * acc / N;
}

}  // namespace hsc
