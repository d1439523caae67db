#include "hsc/params.hpp"

#include <cmath>
#include <sstream>

namespace hsc {

namespace {

void require(std::vector<std::string>& out, bool ok, const std::string& msg) {
  if (!ok) out.push_back(msg);
}

bool pos(double x) { return std::isfinite(x) && x > 0.0; }
bool nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate(const PhysicalParams& p) {
  ValidationReport r;
  require(r.violations, pos(p.eta_i), "eta_i > 0");
  require(r.violations, pos(p.eta_o), "eta_o > 0");
  require(r.violations, pos(p.rho_i), "rho_i > 0");
  require(r.violations, pos(p.rho_o), "rho_o > 0");
  require(r.violations, pos(p.b), "b > 0");
  require(r.violations, pos(p.omega), "omega > 0");
  require(r.violations, pos(p.sigma), "sigma > 0");
  require(r.violations, std::isfinite(p.R) && p.R >= 2.0, "R >= 2");
  require(r.violations, pos(p.E_i), "E_i > 0");
  require(r.violations, pos(p.E_o), "E_o > 0");
  require(r.violations, nonneg(p.F_i), "F_i >= 0");
  require(r.violations, nonneg(p.F_o), "F_o >= 0");
  return r;
}

ValidationReport validate_coeffs(const DerivedCoeffs& c, double sigma, double R) {
  ValidationReport r;
  require(r.violations, pos(c.alpha_i), "alpha_i > 0");
  require(r.violations, pos(c.alpha_o), "alpha_o > 0");
  require(r.violations, nonneg(c.beta_i), "beta_i >= 0");
  require(r.violations, nonneg(c.beta_o), "beta_o >= 0");
  require(r.violations, nonneg(c.gamma_i), "gamma_i >= 0");
  require(r.violations, nonneg(c.gamma_o), "gamma_o >= 0");
  require(r.violations, pos(sigma), "sigma > 0");
  require(r.violations, std::isfinite(R) && R >= 2.0, "R >= 2");
  return r;
}

DerivedCoeffs derive_coefficients(const PhysicalParams& p) {
  ValidationReport r = validate(p);
  if (!r.ok())
    throw validation_error("derive_coefficients: violated bounds: " + r.to_string());
  DerivedCoeffs c;
  const double s = 12.0 / (p.b * p.b);
  c.alpha_i = s * p.eta_i * p.E_i;
  c.alpha_o = s * p.eta_o * p.E_o;
  c.beta_i = s * p.eta_i * p.F_i;
  c.beta_o = s * p.eta_o * p.F_o;
  c.gamma_i = 0.5 * p.rho_i * p.omega * p.omega;
  c.gamma_o = 0.5 * p.rho_o * p.omega * p.omega;
  c.theta_i = {c.alpha_i, c.beta_i};
  c.theta_o = {c.alpha_o, c.beta_o};
  return c;
}

ProblemSetup make_setup(const PhysicalParams& p) {
  ProblemSetup s;
  s.coeffs = derive_coefficients(p);
  s.sigma = p.sigma;
  s.R = p.R;
  s.physical = p;
  return s;
}

ProblemSetup make_setup(const DerivedCoeffs& c, double sigma, double R) {
  ValidationReport r = validate_coeffs(c, sigma, R);
  if (!r.ok()) throw validation_error("make_setup: violated bounds: " + r.to_string());
  ProblemSetup s;
  s.coeffs = c;
  s.coeffs.theta_i = {c.alpha_i, c.beta_i};
  s.coeffs.theta_o = {c.alpha_o, c.beta_o};
  s.sigma = sigma;
  s.R = R;
  return s;
}

}  // namespace hsc
