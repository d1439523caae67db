#include "hsc/csvio.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "hsc/errors.hpp"

namespace hsc {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_dispersion_csv(std::ostream& os, const DispersionTable& t) {
  os << "n,re_l,im_l,A,mu,re_q,im_q\n";
  for (const ModeRecord& m : t.modes) {
    os << m.n << ',' << g17(m.l_n.real()) << ',' << g17(m.l_n.imag()) << ','
       << g17(m.A_n) << ',' << g17(m.mu_n) << ',' << g17(m.q_n.real()) << ','
       << g17(m.q_n.imag()) << '\n';
  }
}

std::string dispersion_summary_json(const DispersionTable& t) {
  nlohmann::ordered_json j;
  j["n_max"] = t.n_max;
  j["B"] = t.B;
  j["lambda_star"] = t.lambda_star;
  j["verdict"] = verdict_name(t.verdict);
  auto [n_fast, rate] = fastest_growing_mode(t);
  j["fastest_mode"] = n_fast;
  j["fastest_rate"] = rate;
  return j.dump(2) + "\n";
}

void write_spectrum_header(std::ostream& os) { os << "t,n,re,im\n"; }

void append_spectrum_rows(std::ostream& os, double t, const SpectralCoeffs& c) {
  for (int n = c.n_min(); n <= c.n_max(); ++n) {
    os << g17(t) << ',' << n << ',' << g17(c.at(n).real()) << ','
       << g17(c.at(n).imag()) << '\n';
  }
}

void write_interface_csv(std::ostream& os, const InterfaceShape& s) {
  os << "theta,radius\n";
  for (int k = 0; k < s.size(); ++k)
    os << g17(s.rho.theta(k)) << ',' << g17(1.0 + s.rho[k]) << '\n';
}

std::string run_manifest_json(const RunConfig& cfg, const SimulationRun& run) {
  nlohmann::ordered_json j;
  j["grid"]["N"] = cfg.grid.N;
  j["grid"]["M"] = cfg.grid.M;
  j["dt"] = run.dt;
  j["t_end"] = cfg.t_end;
  j["snapshot_every"] = cfg.snapshot_every;
  j["snapshots"] = run.times.size();
  j["seed"] = cfg.seed;
  j["coefficients"] = {
      {"alpha_i", cfg.setup.coeffs.alpha_i}, {"alpha_o", cfg.setup.coeffs.alpha_o},
      {"beta_i", cfg.setup.coeffs.beta_i},   {"beta_o", cfg.setup.coeffs.beta_o},
      {"gamma_i", cfg.setup.coeffs.gamma_i}, {"gamma_o", cfg.setup.coeffs.gamma_o},
      {"sigma", cfg.setup.sigma},            {"R", cfg.setup.R}};
  j["monitors"] = {{"max_rho_inf", run.monitors.max_rho_inf},
                   {"max_area_drift", run.monitors.max_area_drift},
                   {"max_conservation", run.monitors.max_conservation},
                   {"max_hermitian_dev", run.monitors.max_hermitian_dev},
                   {"max_krylov_iterations", run.monitors.max_krylov_iterations}};
  return j.dump(2) + "\n";
}

void require_directory(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_directory(path, ec))
    throw filesystem_error("output directory '" + path +
                           "' does not exist (it is never created implicitly)");
}

}  // namespace hsc
