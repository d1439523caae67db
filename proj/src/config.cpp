#include "hsc/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "hsc/errors.hpp"

namespace hsc {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
  std::ostringstream os;
  os << name << ":" << line << ": " << msg;
  throw config_error(os.str());
}

double parse_double(const std::string& name, int line, const std::string& key,
                    const std::string& value) {
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || !std::isfinite(x))
    fail(name, line, "value for '" + key + "' is not a number: '" + value + "'");
  return x;
}

long parse_long(const std::string& name, int line, const std::string& key,
                const std::string& value) {
  char* end = nullptr;
  const long x = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    fail(name, line, "value for '" + key + "' is not an integer: '" + value + "'");
  return x;
}

struct RawInit {
  std::string text;
  int line;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

void append_init(std::vector<InitEntry>& init, const std::string& name,
                 const RawInit& raw, unsigned long seed) {
  const std::string& v = raw.text;
  if (v.rfind("mode:", 0) == 0) {
    const auto parts = split(v, ':');
    if (parts.size() != 3)
      fail(name, raw.line, "expected mode:<n>:<amplitude>, got '" + v + "'");
    const int n = static_cast<int>(parse_long(name, raw.line, "init", parts[1]));
    const double amp = parse_double(name, raw.line, "init", parts[2]);
    if (n <= 0) fail(name, raw.line, "mode preset needs n >= 1");
    // amplitude * cos(n theta) splits evenly over the conjugate pair
    init.push_back({n, {amp / 2.0, 0.0}});
    return;
  }
  if (v.rfind("random:", 0) == 0) {
    const auto parts = split(v, ':');
    if (parts.size() != 3)
      fail(name, raw.line, "expected random:<n_max>:<amplitude>, got '" + v + "'");
    const int nmax = static_cast<int>(parse_long(name, raw.line, "init", parts[1]));
    const double amp = parse_double(name, raw.line, "init", parts[2]);
    if (nmax <= 0) fail(name, raw.line, "random preset needs n_max >= 1");
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= nmax; ++n) {
      const double re = amp * u(gen);
      const double im = amp * u(gen);
      init.push_back({n, {re, im}});
    }
    return;
  }
  const auto parts = split(v, ',');
  if (parts.size() != 3)
    fail(name, raw.line,
         "expected '<n>, <re>, <im>' or a mode:/random: preset, got '" + v + "'");
  InitEntry e;
  e.n = static_cast<int>(parse_long(name, raw.line, "init", parts[0]));
  e.value = {parse_double(name, raw.line, "init", parts[1]),
             parse_double(name, raw.line, "init", parts[2])};
  init.push_back(e);
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
  RunConfig cfg;
  PhysicalParams phys;
  DerivedCoeffs direct;
  double sigma = 1.0, R = 2.0;
  bool any_physical = false, any_direct = false;
  std::vector<RawInit> raw_init;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(name, lineno, "expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, lineno, "missing key before '='");
    if (value.empty()) fail(name, lineno, "missing value for '" + key + "'");

    auto num = [&] { return parse_double(name, lineno, key, value); };
    auto integer = [&] { return parse_long(name, lineno, key, value); };

    if (key == "eta_i") { phys.eta_i = num(); any_physical = true; }
    else if (key == "eta_o") { phys.eta_o = num(); any_physical = true; }
    else if (key == "rho_i") { phys.rho_i = num(); any_physical = true; }
    else if (key == "rho_o") { phys.rho_o = num(); any_physical = true; }
    else if (key == "b") { phys.b = num(); any_physical = true; }
    else if (key == "omega") { phys.omega = num(); any_physical = true; }
    else if (key == "E_i") { phys.E_i = num(); any_physical = true; }
    else if (key == "E_o") { phys.E_o = num(); any_physical = true; }
    else if (key == "F_i") { phys.F_i = num(); any_physical = true; }
    else if (key == "F_o") { phys.F_o = num(); any_physical = true; }
    else if (key == "alpha_i") { direct.alpha_i = num(); any_direct = true; }
    else if (key == "alpha_o") { direct.alpha_o = num(); any_direct = true; }
    else if (key == "beta_i") { direct.beta_i = num(); any_direct = true; }
    else if (key == "beta_o") { direct.beta_o = num(); any_direct = true; }
    else if (key == "gamma_i") { direct.gamma_i = num(); any_direct = true; }
    else if (key == "gamma_o") { direct.gamma_o = num(); any_direct = true; }
    else if (key == "sigma") { sigma = num(); }
    else if (key == "R") { R = num(); }
    else if (key == "N") { cfg.grid.N = static_cast<int>(integer()); }
    else if (key == "M") { cfg.grid.M = static_cast<int>(integer()); }
    else if (key == "init") { raw_init.push_back({value, lineno}); }
    else if (key == "dt") { cfg.dt = num(); }
    else if (key == "t_end") { cfg.t_end = num(); }
    else if (key == "snapshot_every") { cfg.snapshot_every = static_cast<int>(integer()); }
    else if (key == "output_dir") { cfg.output_dir = value; }
    else if (key == "seed") {
      const long s = integer();
      if (s < 0) fail(name, lineno, "seed must be nonnegative");
      cfg.seed = static_cast<unsigned long>(s);
    }
    else if (key == "n_max") { cfg.n_max = static_cast<int>(integer()); }
    else fail(name, lineno, "unknown key '" + key + "'");
  }

  if (any_physical && any_direct)
    fail(name, lineno,
         "physical keys (eta_*, rho_*, b, omega, E_*, F_*) and direct "
         "coefficient keys (alpha_*, beta_*, gamma_*) cannot be mixed");

  try {
    if (any_physical) {
      phys.sigma = sigma;
      phys.R = R;
      cfg.setup = make_setup(phys);
    } else {
      cfg.setup = make_setup(direct, sigma, R);
    }
  } catch (const validation_error& e) {
    throw config_error(name + ": " + e.what());
  }

  if (cfg.grid.N < 16) fail(name, lineno, "N must be at least 16");
  if (cfg.grid.M < 10) fail(name, lineno, "M must be at least 10");
  if (cfg.dt < 0.0) fail(name, lineno, "dt must be nonnegative");
  if (cfg.t_end <= 0.0) fail(name, lineno, "t_end must be positive");
  if (cfg.snapshot_every < 1) fail(name, lineno, "snapshot_every must be >= 1");
  if (cfg.n_max < 1 || cfg.n_max > 512)
    fail(name, lineno, "n_max must lie in [1, 512]");

  for (const auto& raw : raw_init) append_init(cfg.init, name, raw, cfg.seed);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw filesystem_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

SpectralCoeffs initial_spectrum(const RunConfig& cfg) {
  const int N = cfg.grid.N;
  check_grid_size(N);
  SpectralCoeffs c = SpectralCoeffs::zeros(N);
  for (const auto& e : cfg.init) {
    if (std::abs(e.n) > N / 2)
      throw validation_error("initial mode " + std::to_string(e.n) +
                             " exceeds the grid band |n| <= " + std::to_string(N / 2));
    if (e.n == 0) {
      c.at(0) += std::complex<double>(e.value.real(), 0.0);
      continue;
    }
    c.at(e.n) += e.value;
    c.at(-e.n) += std::conj(e.value);
  }
  return c;
}

}  // namespace hsc
