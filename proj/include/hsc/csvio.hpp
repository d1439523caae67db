#pragma once

#include <iosfwd>
#include <string>

#include "hsc/config.hpp"
#include "hsc/dispersion.hpp"
#include "hsc/evolution.hpp"
#include "hsc/geometry.hpp"

namespace hsc {

// Shortest exact decimal round trip is not needed; 17 significant digits
// reproduce every double bit for bit.
std::string g17(double x);

void write_dispersion_csv(std::ostream& os, const DispersionTable& t);
std::string dispersion_summary_json(const DispersionTable& t);

void write_spectrum_header(std::ostream& os);
void append_spectrum_rows(std::ostream& os, double t, const SpectralCoeffs& c);

// theta_k, 1 + rho(theta_k)
void write_interface_csv(std::ostream& os, const InterfaceShape& s);

std::string run_manifest_json(const RunConfig& cfg, const SimulationRun& run);

// Throws filesystem_error if path is not an existing directory. Output
// directories are never created implicitly.
void require_directory(const std::string& path);

}  // namespace hsc
