#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>

#include "hsc/geometry.hpp"
#include "hsc/params.hpp"
#include "hsc/radial_grid.hpp"
#include "hsc/spectral.hpp"

namespace hsc {

enum class Phase { Inner, Outer };

// Transformed inner pressure on the unit disk; vals(j, k) = Q(r_j, theta_k)
// with r ascending and r.back() = 1.
struct DiskField {
  std::vector<double> r;
  Eigen::MatrixXd vals;
  int angular_size() const { return static_cast<int>(vals.cols()); }
};

// Transformed outer pressure on the annulus [1, R].
struct AnnulusField {
  std::vector<double> r;
  double R = 2.0;
  Eigen::MatrixXd vals;
  int angular_size() const { return static_cast<int>(vals.cols()); }
};

struct BoundaryFlux {
  CircleFunction flux;
};

// Exact mode-by-mode solutions at the circular interface (rho = 0), sampled
// on the same radial layout the general solver uses.
DiskField solve_inner_exact(const DerivedCoeffs& c, const SpectralCoeffs& h,
                            int M = 24);
AnnulusField solve_outer_exact(const DerivedCoeffs& c, const SpectralCoeffs& g,
                               double R, int M = 24);

// Mode coefficients of the exact solutions; shared with the composed-operator
// verification path.
std::complex<double> inner_mode_coefficient(const DerivedCoeffs& c, int n);
void outer_mode_coefficients(const DerivedCoeffs& c, double R, int n,
                             std::complex<double>& grow,
                             std::complex<double>& decay);

// Compatibility projection. P(rho)h carries the (1+rho)-weighted mean of h
// along the arclength density sqrt(rho'^2 + (1+rho)^2) / (1+rho), the radial
// profile of a uniform normal speed, so h - P(rho)h has (1+rho)-weighted mean
// zero.
CircleFunction projection(const InterfaceShape& s, const CircleFunction& h);

// Variable-coefficient collocation solver for a fixed shape. Assembles and
// factors both boundary-value problems once; solves reuse the factorizations.
class GeneralSolver {
 public:
  GeneralSolver(const DerivedCoeffs& c, const InterfaceShape& s, double R, int M);
  ~GeneralSolver();
  GeneralSolver(GeneralSolver&&) noexcept;
  GeneralSolver& operator=(GeneralSolver&&) noexcept;

  // A_i(rho) Q = 0, B_i(rho) Q = h - P(rho) h, Int_{S^1} Q = Int_{S^1} h.
  std::pair<DiskField, BoundaryFlux> solve_inner(const CircleFunction& h) const;
  // A_o(rho) Q = 0, Q = g at r = 1, alpha_o dQ/dnu + beta_o dQ/dtau = 0 at r = R;
  // returned flux is B_o(rho) Q at the unit circle.
  std::pair<AnnulusField, BoundaryFlux> solve_outer(const CircleFunction& g) const;

  CircleFunction inner_trace(const DiskField& f) const;
  BoundaryFlux flux_inner(const DiskField& f) const;

  int angular_size() const;
  int radial_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::pair<DiskField, BoundaryFlux> solve_inner_general(const DerivedCoeffs& c,
                                                       const InterfaceShape& s,
                                                       const CircleFunction& h,
                                                       int M = 24);
std::pair<AnnulusField, BoundaryFlux> solve_outer_general(const DerivedCoeffs& c,
                                                          const InterfaceShape& s,
                                                          const CircleFunction& g,
                                                          double R, int M = 24);

// B_i(rho) applied to a disk field on the unit circle.
BoundaryFlux boundary_flux_inner(const DerivedCoeffs& c, const InterfaceShape& s,
                                 const DiskField& field);

// v_j = (1/|theta_j|^2) (-alpha_j grad P - beta_j (z x grad P))
Point recover_velocity(const DerivedCoeffs& c, Point pressure_gradient,
                       Phase which);
std::vector<Point> recover_velocity(const DerivedCoeffs& c,
                                    const std::vector<Point>& pressure_gradient,
                                    Phase which);

// p_j = P_j + gamma_j |x|^2 with |x| the node radius of the physical domain.
DiskField to_hydrostatic_pressure(const DerivedCoeffs& c, const DiskField& field,
                                  Phase which);
AnnulusField to_hydrostatic_pressure(const DerivedCoeffs& c,
                                     const AnnulusField& field, Phase which);

}  // namespace hsc
