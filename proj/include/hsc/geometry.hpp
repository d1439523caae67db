#pragma once

#include <array>

#include "hsc/params.hpp"
#include "hsc/spectral.hpp"

namespace hsc {

using Point = std::array<double, 2>;

// Half-width of the cutoff plateau; the collar where the interface map acts
// is 1 - 3a <= |x| <= 1 + 3a.
inline constexpr double kCollarHalfWidth = 0.125;  // a = 1/8

// C^2 radial bump: 1 for |s| <= a, 0 for |s| >= 3a, monotone quintic
// transition in between, |cutoff_d1| < 1/a everywhere.
double cutoff(double s);
double cutoff_d1(double s);
double cutoff_d2(double s);

// Perturbation radius rho over the unit circle; interface is (1+rho(theta)).
// Construction enforces ||rho||_inf < 1/8.
struct InterfaceShape {
  CircleFunction rho;

  explicit InterfaceShape(CircleFunction r);
  static InterfaceShape circle(int N) { return InterfaceShape(CircleFunction::zeros(N)); }
  int size() const { return rho.size(); }
};

struct NormalData {
  std::vector<Point> nu;    // outward unit normal on the interface
  std::vector<Point> tau;   // tangent, tau = -(z x nu)
  CircleFunction grad_norm; // |grad N_rho| on the circle
};

// r -> r + cutoff(r-1) rho(theta) along each ray.
struct HanzawaMap {
  InterfaceShape shape;
  SpectralCoeffs rho_hat;

  explicit HanzawaMap(InterfaceShape s);
};

// sigma * [(1+rho)^2 + 2 rho'^2 - (1+rho) rho''] / [(1+rho)^2 + rho'^2]^{3/2}
//   + (gamma_o - gamma_i) (1+rho)^2
// Spectral derivatives; pointwise products dealiased.
// Throws singular_geometry_error if the denominator drops below 1e-14.
CircleFunction curvature_functional(const InterfaceShape& s, const DerivedCoeffs& c,
                                    double sigma);

// Exact multiplier action of the curvature linearization at the circle:
// mode n scales by sigma (n^2 - 1) + 2 (gamma_o - gamma_i).
CircleFunction linearized_curvature(const CircleFunction& h, double sigma,
                                    const DerivedCoeffs& c);

NormalData normal_data(const InterfaceShape& s);

Point hanzawa_forward(const HanzawaMap& m, Point x);
// Safeguarded 1-D root finding along the ray; throws inversion_error after
// 100 iterations without convergence.
Point hanzawa_inverse(const HanzawaMap& m, Point y);

// (1/2) Int (1+rho)^2 dtheta by spectral quadrature.
double enclosed_area(const InterfaceShape& s);

}  // namespace hsc
