#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  os << text;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("hsc_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

CmdResult run_cli(const std::string& args, const fs::path& scratch) {
  const fs::path out = scratch / "stdout.txt";
  const fs::path err = scratch / "stderr.txt";
  const std::string cmd = std::string("\"") + HSC_CLI_PATH + "\" " + args +
                          " > \"" + out.string() + "\" 2> \"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  CmdResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

const char* kBaseConfig =
    "alpha_i = 1\n"
    "alpha_o = 2\n"
    "gamma_o = 1\n"
    "sigma = 1\n"
    "R = 2\n";

}  // namespace

TEST_CASE("dispersion subcommand writes the table and the verdict") {
  const fs::path dir = fresh_dir("disp");
  const fs::path cfg = dir / "run.cfg";
  write_file(cfg, kBaseConfig);

  const CmdResult r = run_cli(
      "--config \"" + cfg.string() + "\" --out \"" + dir.string() +
          "\" --n-max 16 dispersion",
      dir);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "verdict: Stable"));

  const auto csv = lines_of(slurp(dir / "dispersion.csv"));
  REQUIRE(csv.size() == 33);  // header + modes -16..-1, 1..16
  CHECK(csv[0] == "n,re_l,im_l,A,mu,re_q,im_q");
  bool found = false;
  for (size_t i = 1; i < csv.size(); ++i) {
    const auto f = split_csv(csv[i]);
    REQUIRE(f.size() == 7);
    if (f[0] == "1") {
      found = true;
      CHECK(std::stod(f[1]) == doctest::Approx(-0.3).epsilon(1e-12));
      CHECK(std::stod(f[5]) ==
            doctest::Approx(-6.0 / 13.0).epsilon(1e-12));
      CHECK(std::stod(f[6]) == 0.0);
    }
  }
  CHECK(found);

  const std::string json = slurp(dir / "dispersion.json");
  CHECK(contains(json, "\"verdict\": \"Stable\""));
  CHECK(contains(json, "\"lambda_star\""));

  fs::remove_all(dir);
}

TEST_CASE("simulate writes its artifacts deterministically") {
  const fs::path dir = fresh_dir("sim");
  const fs::path cfg = dir / "run.cfg";
  write_file(cfg, std::string(kBaseConfig) +
                      "N = 16\n"
                      "M = 16\n"
                      "dt = 1e-3\n"
                      "t_end = 0.05\n"
                      "snapshot_every = 10\n"
                      "init = mode:2:1e-4\n");
  const fs::path a = dir / "a";
  const fs::path b = dir / "b";
  fs::create_directories(a);
  fs::create_directories(b);

  const CmdResult ra = run_cli(
      "--config \"" + cfg.string() + "\" --out \"" + a.string() + "\" simulate",
      dir);
  const CmdResult rb = run_cli(
      "--config \"" + cfg.string() + "\" --out \"" + b.string() + "\" simulate",
      dir);
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);
  CHECK(contains(ra.out, "snapshots"));

  for (const char* name : {"spectra.csv", "manifest.json", "interface_final.csv"}) {
    CHECK(fs::exists(a / name));
    CHECK(fs::exists(b / name));
  }
  const std::string sa = slurp(a / "spectra.csv");
  CHECK(sa == slurp(b / "spectra.csv"));

  // initial snapshot plus one every 10 of the 50 steps, 17 modes each
  const auto rows = lines_of(sa);
  REQUIRE(rows.size() == 1 + 6 * 17);
  CHECK(rows[0] == "t,n,re,im");

  CHECK(contains(slurp(a / "manifest.json"), "snapshots_data"));
  const auto iface = lines_of(slurp(a / "interface_final.csv"));
  REQUIRE(iface.size() == 17);
  CHECK(iface[0] == "theta,radius");

  fs::remove_all(dir);
}

TEST_CASE("solve-elliptic emits field, flux, and flux spectrum") {
  const fs::path dir = fresh_dir("ell");
  const fs::path cfg = dir / "run.cfg";
  write_file(cfg, std::string(kBaseConfig) + "N = 16\nM = 16\n");

  std::ostringstream data;
  data << "value\n";
  for (int k = 0; k < 16; ++k)
    data << std::cos(2.0 * std::acos(-1.0) * k / 16.0) << "\n";
  const fs::path data_path = dir / "data.csv";
  write_file(data_path, data.str());

  const CmdResult r = run_cli(
      "--config \"" + cfg.string() + "\" --out \"" + dir.string() +
          "\" solve-elliptic --data \"" + data_path.string() +
          "\" --domain outer",
      dir);
  CHECK(r.exit_code == 0);

  const auto field = lines_of(slurp(dir / "field.csv"));
  CHECK(field.size() > 1);
  CHECK(field[0] == "r,theta,value");
  const auto flux = lines_of(slurp(dir / "flux.csv"));
  REQUIRE(flux.size() == 17);
  CHECK(flux[0] == "theta,flux");
  const auto spec = lines_of(slurp(dir / "flux_spectrum.csv"));
  REQUIRE(spec.size() == 18);  // header + modes -8..8
  CHECK(spec[0] == "n,re,im");

  // mismatched sample count is rejected up front
  std::ostringstream wrong;
  for (int k = 0; k < 32; ++k) wrong << "0.5\n";
  write_file(data_path, wrong.str());
  const CmdResult bad = run_cli(
      "--config \"" + cfg.string() + "\" --out \"" + dir.string() +
          "\" solve-elliptic --data \"" + data_path.string() + "\"",
      dir);
  CHECK(bad.exit_code == 1);
  CHECK(contains(bad.err, "boundary data"));

  fs::remove_all(dir);
}

TEST_CASE("config errors carry the file name and line number") {
  const fs::path dir = fresh_dir("badcfg");
  const fs::path cfg = dir / "run.cfg";
  write_file(cfg, "alpha_i = 1\nalpha_o = 2\nN = twelve\n");

  const CmdResult r = run_cli(
      "--config \"" + cfg.string() + "\" --out \"" + dir.string() +
          "\" dispersion",
      dir);
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "error:"));
  CHECK(contains(r.err, ":3:"));

  const CmdResult missing = run_cli("dispersion", dir);
  CHECK(missing.exit_code == 1);
  CHECK(contains(missing.err, "--config is required"));

  fs::remove_all(dir);
}

TEST_CASE("a missing output directory is an error, not an mkdir") {
  const fs::path dir = fresh_dir("noout");
  const fs::path cfg = dir / "run.cfg";
  write_file(cfg, kBaseConfig);
  const fs::path missing = dir / "not" / "here";

  const CmdResult r = run_cli(
      "--config \"" + cfg.string() + "\" --out \"" + missing.string() +
          "\" dispersion",
      dir);
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "error:"));
  CHECK_FALSE(fs::exists(missing));

  fs::remove_all(dir);
}

TEST_CASE("verify subcommand reports per-criterion outcomes") {
  const fs::path dir = fresh_dir("verify");

  const CmdResult ok =
      run_cli("--out \"" + dir.string() + "\" verify --criteria 2", dir);
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.out, "[2/9] PASS"));
  CHECK(contains(ok.out, "all criteria passed"));
  CHECK(contains(slurp(dir / "verify_report.json"), "\"passed\": true"));

  const CmdResult bad = run_cli(
      "--out \"" + dir.string() +
          "\" verify --criteria 1 --inject-l-error 1e-6",
      dir);
  CHECK(bad.exit_code == 1);
  CHECK(contains(bad.out, "[1/9] FAIL"));
  CHECK(contains(bad.out, "some criteria FAILED"));

  fs::remove_all(dir);
}
