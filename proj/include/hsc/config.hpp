#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "hsc/params.hpp"
#include "hsc/spectral.hpp"

namespace hsc {

struct GridConfig {
  int N = 128;  // angular collocation points
  int M = 24;   // radial nodes per domain
};

struct InitEntry {
  int n = 0;
  std::complex<double> value;  // coefficient of e^{i n theta}
};

struct RunConfig {
  ProblemSetup setup = make_setup(DerivedCoeffs{}, 1.0, 2.0);
  GridConfig grid;
  std::vector<InitEntry> init;
  double dt = 0.0;  // 0 selects the stability-based default
  double t_end = 1.0;
  int snapshot_every = 1;
  std::string output_dir = ".";
  unsigned long seed = 0;
  int n_max = 128;
};

// key = value file, one pair per line, '#' starts a comment. Errors carry
// "<name>:<line>:" prefixes. Coefficients are given either through the
// physical parameter keys (eta_i, ..., omega) or directly (alpha_i, ...,
// gamma_o); mixing the two families is rejected.
RunConfig parse_config_text(const std::string& text, const std::string& name);
RunConfig parse_config_file(const std::string& path);

// Assemble the initial interface spectrum on an N-point grid. Each entry sets
// the conjugate pair (n, -n); entries beyond |n| = N/2 are rejected.
SpectralCoeffs initial_spectrum(const RunConfig& cfg);

}  // namespace hsc
