#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsc/config.hpp"
#include "hsc/csvio.hpp"
#include "hsc/dispersion.hpp"
#include "hsc/elliptic.hpp"
#include "hsc/errors.hpp"
#include "hsc/evolution.hpp"
#include "hsc/verify.hpp"

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
  const std::string path = dir + "/" + name;
  std::ofstream os(path);
  if (!os) throw hsc::filesystem_error("cannot write '" + path + "'");
  return os;
}

hsc::CircleFunction read_boundary_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hsc::filesystem_error("cannot open data file '" + path + "'");
  std::vector<double> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    char* end = nullptr;
    const double x = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) {
      if (lineno == 1) continue;  // header row
      throw hsc::config_error(path + ":" + std::to_string(lineno) +
                              ": expected one numeric value per line");
    }
    vals.push_back(x);
  }
  return hsc::CircleFunction(std::move(vals));
}

int run_dispersion(const hsc::RunConfig& cfg, const std::string& out_dir,
                   int n_max_override, bool quiet) {
  const int n_max = n_max_override > 0 ? n_max_override : cfg.n_max;
  const hsc::DispersionTable table = hsc::build_dispersion_table(
      cfg.setup.coeffs, cfg.setup.sigma, cfg.setup.R, n_max);
  hsc::require_directory(out_dir);
  {
    auto os = open_out(out_dir, "dispersion.csv");
    hsc::write_dispersion_csv(os, table);
  }
  {
    auto os = open_out(out_dir, "dispersion.json");
    os << hsc::dispersion_summary_json(table);
  }
  if (!quiet) {
    const auto [n, rate] = hsc::fastest_growing_mode(table);
    std::cout << "verdict: " << hsc::verdict_name(table.verdict)
              << ", lambda* = " << hsc::g17(table.lambda_star)
              << ", fastest mode n = " << n << " (Re q = " << hsc::g17(rate)
              << ")\n";
  }
  return 0;
}

int run_simulate(const hsc::RunConfig& cfg, const std::string& out_dir,
                 bool quiet) {
  hsc::require_directory(out_dir);
  auto spectra_csv = open_out(out_dir, "spectra.csv");
  hsc::write_spectrum_header(spectra_csv);
  const auto snapshot = [&](double t, const hsc::SpectralCoeffs& c, double) {
    hsc::append_spectrum_rows(spectra_csv, t, c);
    spectra_csv.flush();
  };
  const hsc::SimulationRun run = hsc::simulate(cfg, snapshot);

  {
    auto os = open_out(out_dir, "manifest.json");
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(
        hsc::run_manifest_json(cfg, run));
    nlohmann::ordered_json snaps = nlohmann::ordered_json::array();
    for (size_t i = 0; i < run.times.size(); ++i) {
      nlohmann::ordered_json modes = nlohmann::ordered_json::array();
      const hsc::SpectralCoeffs& c = run.spectra[i];
      for (int n = c.n_min(); n <= c.n_max(); ++n)
        modes.push_back({n, c.at(n).real(), c.at(n).imag()});
      snaps.push_back({{"t", run.times[i]},
                       {"area", run.areas[i]},
                       {"spectrum", std::move(modes)}});
    }
    j["snapshots_data"] = std::move(snaps);
    os << j.dump(2) << "\n";
  }
  {
    auto os = open_out(out_dir, "interface_final.csv");
    hsc::write_interface_csv(
        os, hsc::InterfaceShape(hsc::from_spectral(run.spectra.back())));
  }
  if (!quiet) {
    std::cout << "steps of dt = " << hsc::g17(run.dt) << ", "
              << run.times.size() << " snapshots, max |rho| = "
              << hsc::g17(run.monitors.max_rho_inf)
              << ", area drift = " << hsc::g17(run.monitors.max_area_drift)
              << "\n";
  }
  return 0;
}

int run_solve_elliptic(const hsc::RunConfig& cfg, const std::string& out_dir,
                       const std::string& data_path, const std::string& domain,
                       bool quiet) {
  const hsc::CircleFunction data = read_boundary_data(data_path);
  if (data.size() != cfg.grid.N)
    throw hsc::validation_error(
        "boundary data has " + std::to_string(data.size()) +
        " samples but the config grid has N = " + std::to_string(cfg.grid.N));
  const hsc::InterfaceShape shape(hsc::from_spectral(hsc::initial_spectrum(cfg)));
  hsc::require_directory(out_dir);

  std::vector<double> radii;
  Eigen::MatrixXd vals;
  hsc::CircleFunction flux;
  if (domain == "inner") {
    auto [field, bf] = hsc::solve_inner_general(cfg.setup.coeffs, shape, data,
                                                cfg.grid.M);
    radii = field.r;
    vals = field.vals;
    flux = bf.flux;
  } else if (domain == "outer") {
    auto [field, bf] = hsc::solve_outer_general(cfg.setup.coeffs, shape, data,
                                                cfg.setup.R, cfg.grid.M);
    radii = field.r;
    vals = field.vals;
    flux = bf.flux;
  } else {
    throw hsc::validation_error("--domain must be 'inner' or 'outer'");
  }

  {
    auto os = open_out(out_dir, "field.csv");
    os << "r,theta,value\n";
    for (size_t j = 0; j < radii.size(); ++j)
      for (int k = 0; k < data.size(); ++k)
        os << hsc::g17(radii[j]) << ',' << hsc::g17(data.theta(k)) << ','
           << hsc::g17(vals(static_cast<Eigen::Index>(j), k)) << '\n';
  }
  {
    auto os = open_out(out_dir, "flux.csv");
    os << "theta,flux\n";
    for (int k = 0; k < flux.size(); ++k)
      os << hsc::g17(flux.theta(k)) << ',' << hsc::g17(flux[k]) << '\n';
  }
  {
    auto os = open_out(out_dir, "flux_spectrum.csv");
    os << "n,re,im\n";
    const hsc::SpectralCoeffs c = hsc::to_spectral(flux);
    for (int n = c.n_min(); n <= c.n_max(); ++n)
      os << n << ',' << hsc::g17(c.at(n).real()) << ','
         << hsc::g17(c.at(n).imag()) << '\n';
  }
  if (!quiet)
    std::cout << domain << " solve done, max |flux| = "
              << hsc::g17(hsc::max_abs(flux)) << "\n";
  return 0;
}

int run_verify(const std::string& out_dir, const std::string& criteria,
               double inject, bool quiet) {
  hsc::VerifyOptions opt;
  opt.inject_l_error = inject;
  if (!criteria.empty()) {
    std::istringstream in(criteria);
    std::string tok;
    while (std::getline(in, tok, ','))
      opt.criteria.push_back(std::stoi(tok));
  }
  const std::vector<hsc::CriterionResult> results = hsc::run_acceptance_suite(opt);

  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  bool all_ok = true;
  for (const hsc::CriterionResult& r : results) {
    all_ok = all_ok && r.passed;
    if (!quiet) {
      std::cout << "[" << r.id << "/9] " << (r.passed ? "PASS" : "FAIL") << " "
                << r.name << " (" << r.seconds << " s): " << r.detail << "\n";
    }
    report.push_back({{"id", r.id},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"detail", r.detail},
                      {"seconds", r.seconds}});
  }
  hsc::require_directory(out_dir);
  {
    auto os = open_out(out_dir, "verify_report.json");
    os << report.dump(2) << "\n";
  }
  if (!quiet)
    std::cout << (all_ok ? "all criteria passed" : "some criteria FAILED")
              << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-phase rotating Hele-Shaw interface toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", data_path, domain = "inner";
  std::string criteria;
  double inject = 0.0;
  int n_max = -1;
  bool quiet = false;

  app.add_option("--config", config_path, "path to a key = value config file");
  app.add_option("--out", out_dir, "output directory (must already exist)");
  app.add_option("--n-max", n_max, "mode range for the dispersion table");
  app.add_flag("--quiet", quiet, "suppress progress output");

  CLI::App* sc_disp = app.add_subcommand("dispersion", "emit the mode table");
  CLI::App* sc_sim = app.add_subcommand("simulate", "run the interface evolution");
  CLI::App* sc_ell =
      app.add_subcommand("solve-elliptic", "solve one boundary-value problem");
  sc_ell->add_option("--data", data_path, "boundary data CSV, one value per line")
      ->required();
  sc_ell->add_option("--domain", domain, "inner or outer");
  CLI::App* sc_ver = app.add_subcommand("verify", "run the acceptance checks");
  sc_ver->add_option("--criteria", criteria, "comma-separated criterion ids");
  sc_ver->add_option("--inject-l-error", inject,
                     "fault-injection fixture for the reporting path");
  for (CLI::App* sc : {sc_disp, sc_sim, sc_ell, sc_ver}) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(sc_ver))
      return run_verify(out_dir, criteria, inject, quiet);

    if (config_path.empty())
      throw hsc::config_error("--config is required for this subcommand");
    const hsc::RunConfig cfg = hsc::parse_config_file(config_path);
    const std::string dir =
        app.count("--out") > 0 ? out_dir : cfg.output_dir;

    if (app.got_subcommand(sc_disp))
      return run_dispersion(cfg, dir, n_max, quiet);
    if (app.got_subcommand(sc_sim)) return run_simulate(cfg, dir, quiet);
    if (app.got_subcommand(sc_ell))
      return run_solve_elliptic(cfg, dir, data_path, domain, quiet);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
