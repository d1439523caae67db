#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hsc/errors.hpp"

namespace hsc {

// Raw physical inputs. Nondimensional; no unit handling.
struct PhysicalParams {
  double eta_i = 1.0;   // inner viscosity (> 0)
  double eta_o = 1.0;   // outer viscosity (> 0)
  double rho_i = 1.0;   // inner density (> 0)
  double rho_o = 1.0;   // outer density (> 0)
  double b = 1.0;       // gap width (> 0)
  double omega = 1.0;   // angular velocity (> 0)
  double sigma = 1.0;   // surface tension (> 0)
  double R = 2.0;       // cell radius (>= 2)
  double E_i = 1.0;     // Coriolis coefficient (> 0)
  double E_o = 1.0;     // Coriolis coefficient (> 0)
  double F_i = 0.0;     // Coriolis coefficient (>= 0)
  double F_o = 0.0;     // Coriolis coefficient (>= 0)
};

// Coefficients the analysis runs on:
//   alpha_j = 12 eta_j E_j / b^2, beta_j = 12 eta_j F_j / b^2,
//   gamma_j = rho_j omega^2 / 2, theta_j = alpha_j + i beta_j.
struct DerivedCoeffs {
  double alpha_i = 1.0;
  double alpha_o = 1.0;
  double beta_i = 0.0;
  double beta_o = 0.0;
  double gamma_i = 0.0;
  double gamma_o = 0.0;
  std::complex<double> theta_i{1.0, 0.0};
  std::complex<double> theta_o{1.0, 0.0};
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate(const PhysicalParams& p);

// Bounds for directly supplied coefficients (alpha_j > 0, beta_j >= 0,
// gamma_j >= 0) together with sigma > 0 and R >= 2.
ValidationReport validate_coeffs(const DerivedCoeffs& c, double sigma, double R);

// Throws validation_error naming the offending field if p is inadmissible.
DerivedCoeffs derive_coefficients(const PhysicalParams& p);

// Coefficients plus the two scalars every downstream operation needs.
// `physical` is set when the setup was entered through PhysicalParams.
struct ProblemSetup {
  DerivedCoeffs coeffs;
  double sigma = 1.0;
  double R = 2.0;
  std::optional<PhysicalParams> physical;
};

ProblemSetup make_setup(const PhysicalParams& p);
// Throws validation_error if the coefficient bounds are violated.
ProblemSetup make_setup(const DerivedCoeffs& c, double sigma, double R);

}  // namespace hsc
