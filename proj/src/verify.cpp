#include "hsc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "hsc/dispersion.hpp"
#include "hsc/elliptic.hpp"
#include "hsc/evolution.hpp"
#include "hsc/geometry.hpp"

namespace hsc {

namespace {

using cplx = std::complex<double>;

// --- reference parameter sets -------------------------------------------

ProblemSetup stable_setup() {
  DerivedCoeffs c;
  c.alpha_i = 1.0;
  c.alpha_o = 2.0;
  c.beta_i = 0.0;
  c.beta_o = 0.0;
  c.gamma_i = 0.0;
  c.gamma_o = 1.0;
  return make_setup(c, 1.0, 2.0);
}

ProblemSetup coriolis_setup() {
  DerivedCoeffs c;
  c.alpha_i = 1.0;
  c.alpha_o = 2.0;
  c.beta_i = 0.5;
  c.beta_o = 1.5;
  c.gamma_i = 0.0;
  c.gamma_o = 1.0;
  return make_setup(c, 1.0, 2.0);
}

ProblemSetup reversed_setup() {
  DerivedCoeffs c;
  c.alpha_i = 1.0;
  c.alpha_o = 2.0;
  c.beta_i = 0.0;
  c.beta_o = 0.0;
  c.gamma_i = 1.0;
  c.gamma_o = 0.0;
  return make_setup(c, 1.0, 2.0);
}

// --- composed-operator oracle --------------------------------------------
// Rebuilds q_n from the exact mode solves: the boundary operator applied to
// the outer mode profile, the inner trace coefficient, the resolvent factor
// and the curvature multiplier. Independent of the closed forms in
// dispersion.cpp.

cplx flux_multiplier(const DerivedCoeffs& c, double R, int n) {
  cplx grow, decay;
  outer_mode_coefficients(c, R, n, grow, decay);
  const double abs2 = c.alpha_o * c.alpha_o + c.beta_o * c.beta_o;
  const cplx dr = static_cast<double>(n) * (grow - decay);
  const cplx dtheta(0.0, static_cast<double>(n));  // trace is e^{i n theta}
  return (-1.0 / abs2) * (c.alpha_o * dr - c.beta_o * dtheta);
}

cplx oracle_q(const DerivedCoeffs& c, double sigma, double R, int n,
              double inject) {
  const cplx m = flux_multiplier(c, R, n);
  cplx l = m * inner_mode_coefficient(c, n);
  l *= (1.0 + inject);
  const double dk =
      sigma * (static_cast<double>(n) * n - 1.0) + 2.0 * (c.gamma_o - c.gamma_i);
  return m * (-dk) / (1.0 - l);
}

// --- shared fixtures ------------------------------------------------------

RunConfig mode_run(const ProblemSetup& su, int n, double amplitude, double dt,
                   double t_end, int every, int N, int M) {
  RunConfig cfg;
  cfg.setup = su;
  cfg.grid.N = N;
  cfg.grid.M = M;
  cfg.init.push_back({n, {amplitude / 2.0, 0.0}});
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.snapshot_every = every;
  return cfg;
}

InterfaceShape random_shape(std::mt19937& gen, int N, int max_mode,
                            double target) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralCoeffs c = SpectralCoeffs::zeros(N);
  for (int n = 1; n <= max_mode; ++n) {
    const cplx z(u(gen), u(gen));
    c.at(n) = z;
    c.at(-n) = std::conj(z);
  }
  CircleFunction f = from_spectral(c);
  const double s = max_abs(f);
  for (double& v : f.v) v *= target / s;
  return InterfaceShape(std::move(f));
}

struct SuiteContext {
  VerifyOptions opt;
  std::optional<SimulationRun> run4;  // stable reference run, shared by 6 and 9

  const SimulationRun& stable_run() {
    if (!run4) {
      RunConfig cfg = mode_run(stable_setup(), 2, 1e-4, 1e-3, 1.0, 10, 16, 18);
      run4 = simulate(cfg);
    }
    return *run4;
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// --- criteria -------------------------------------------------------------

bool criterion_dispersion_oracle(SuiteContext& ctx, std::string& detail) {
  double worst = 0.0;
  int worst_n = 0;
  const char* worst_set = "";
  for (const auto& [label, su] :
       {std::pair<const char*, ProblemSetup>{"no-rotation-coupling", stable_setup()},
        {"coriolis", coriolis_setup()}}) {
    for (int n = -64; n <= 64; ++n) {
      if (n == 0) continue;
      const cplx q = compute_q_n(su.coeffs, su.sigma, su.R, n);
      const cplx qo =
          oracle_q(su.coeffs, su.sigma, su.R, n, ctx.opt.inject_l_error);
      const double rel = std::abs(q - qo) / std::abs(qo);
      if (rel > worst) {
        worst = rel;
        worst_n = n;
        worst_set = label;
      }
    }
  }
  detail = "max relative deviation " + fmt(worst) + " at n = " +
           std::to_string(worst_n) + " (" + worst_set + "), bound 1e-10";
  return worst <= 1e-10;
}

bool criterion_known_values(SuiteContext&, std::string& detail) {
  const ProblemSetup su = stable_setup();
  struct Check {
    const char* what;
    double got;
    double want;
  };
  const cplx q1 = compute_q_n(su.coeffs, su.sigma, su.R, 1);
  const cplx q2 = compute_q_n(su.coeffs, su.sigma, su.R, 2);
  const cplx l1 = compute_l_n(su.coeffs, su.R, 1);
  const cplx l40 = compute_l_n(su.coeffs, su.R, 40);
  const Check checks[] = {
      {"q_1", q1.real(), -6.0 / 13.0},
      {"q_1 imag", q1.imag(), 0.0},
      {"q_2", q2.real(), -150.0 / 49.0},
      {"l_1", l1.real(), -3.0 / 10.0},
      {"l_1 imag", l1.imag(), 0.0},
      {"lambda*", spectral_bound(su.coeffs), 5.0 / 3.0},
      {"l_40 limit", l40.real(), -0.5},
  };
  double worst = 0.0;
  const char* worst_what = "";
  for (const Check& c : checks) {
    const double err = std::abs(c.got - c.want) / std::max(1.0, std::abs(c.want));
    if (err > worst) {
      worst = err;
      worst_what = c.what;
    }
  }
  detail = "worst deviation " + fmt(worst) + " (" + worst_what + "), bound 1e-10";
  return worst <= 1e-10;
}

bool criterion_elliptic_vs_exact(SuiteContext&, std::string& detail) {
  const ProblemSetup su = coriolis_setup();
  const int N = 64, M = 64;
  const InterfaceShape circle = InterfaceShape::circle(N);
  double worst_field = 0.0, worst_flux = 0.0;

  auto with_modes = [&](auto&& solve_one) {
    for (int n = 1; n <= 8; ++n) {
      for (int phase = 0; phase < 2; ++phase) {
        CircleFunction h = CircleFunction::zeros(N);
        for (int k = 0; k < N; ++k) {
          const double t = h.theta(k) * n;
          h[k] = phase == 0 ? std::cos(t) : std::sin(t);
        }
        solve_one(h);
      }
    }
  };

  {
    GeneralSolver gs(su.coeffs, circle, su.R, M);
    with_modes([&](const CircleFunction& h) {
      auto [field, flux] = gs.solve_inner(h);
      const DiskField exact = solve_inner_exact(su.coeffs, to_spectral(h), M);
      const double scale = exact.vals.cwiseAbs().maxCoeff();
      worst_field = std::max(
          worst_field, (field.vals - exact.vals).cwiseAbs().maxCoeff() / scale);
      // exact flux: data minus its projection equals the data for pure modes
      double e = 0.0;
      for (int k = 0; k < N; ++k) e = std::max(e, std::abs(flux.flux[k] - h[k]));
      worst_flux = std::max(worst_flux, e);
    });
  }
  {
    GeneralSolver gs(su.coeffs, circle, su.R, M);
    with_modes([&](const CircleFunction& g) {
      auto [field, flux] = gs.solve_outer(g);
      const AnnulusField exact = solve_outer_exact(su.coeffs, to_spectral(g), su.R, M);
      const double scale = exact.vals.cwiseAbs().maxCoeff();
      worst_field = std::max(
          worst_field, (field.vals - exact.vals).cwiseAbs().maxCoeff() / scale);
      const SpectralCoeffs gh = to_spectral(g);
      double e = 0.0;
      for (int k = 0; k < N; ++k) {
        cplx want = 0.0;
        for (int n = 1; n <= N / 2; ++n) {
          if (gh.at(n) == cplx(0.0, 0.0)) continue;
          const cplx m = flux_multiplier(su.coeffs, su.R, n);
          const cplx e_t(std::cos(n * g.theta(k)), std::sin(n * g.theta(k)));
          want += gh.at(n) * m * e_t;
        }
        e = std::max(e, std::abs(flux.flux[k] - 2.0 * want.real()));
      }
      worst_flux = std::max(worst_flux, e);
    });
  }

  // radial refinement study on the annulus, mode 3, small angular grid
  const int Nc = 16;
  CircleFunction g3 = CircleFunction::zeros(Nc);
  for (int k = 0; k < Nc; ++k) g3[k] = std::cos(3.0 * g3.theta(k));
  const InterfaceShape small_circle = InterfaceShape::circle(Nc);
  std::vector<int> Ms = {12, 16, 20};
  std::vector<double> errs;
  for (int Mc : Ms) {
    auto [field, flux] = solve_outer_general(su.coeffs, small_circle, g3, su.R, Mc);
    const AnnulusField exact = solve_outer_exact(su.coeffs, to_spectral(g3), su.R, Mc);
    errs.push_back(
        std::max((field.vals - exact.vals).cwiseAbs().maxCoeff(), 1e-16));
  }
  const double p1 = std::log(errs[0] / errs[1]) /
                    std::log(static_cast<double>(Ms[1]) / Ms[0]);
  const double p2 = std::log(errs[1] / errs[2]) /
                    std::log(static_cast<double>(Ms[2]) / Ms[1]);
  const bool order_ok =
      (p1 >= 2.0 && p2 >= 2.0) || (errs[1] <= 1e-10 && errs[2] <= 1e-10);

  detail = "max field error " + fmt(worst_field) + ", flux error " +
           fmt(worst_flux) + " (bound 1e-8); refinement orders " + fmt(p1) +
           ", " + fmt(p2);
  return worst_field <= 1e-8 && worst_flux <= 1e-8 && order_ok;
}

bool criterion_stable_decay(SuiteContext& ctx, std::string& detail) {
  const SimulationRun& run = ctx.stable_run();
  const RateFit fit = fit_rate(run, 2);
  const cplx q2 = compute_q_n(stable_setup().coeffs, 1.0, 2.0, 2);
  const double rate_err = std::abs(fit.rate - q2.real()) / std::abs(q2.real());

  const ProblemSetup sub = coriolis_setup();
  RunConfig cfg_b = mode_run(sub, 2, 1e-4, 1e-3, 1.0, 10, 16, 18);
  const SimulationRun run_b = simulate(cfg_b);
  const RateFit fit_b = fit_rate(run_b, 2);
  const cplx q2b = compute_q_n(sub.coeffs, sub.sigma, sub.R, 2);
  const double rate_err_b = std::abs(fit_b.rate - q2b.real()) / std::abs(q2b.real());
  const double freq_err = std::abs(fit_b.frequency - q2b.imag()) / std::abs(q2b.imag());

  detail = "decay rate error " + fmt(rate_err) + " and " + fmt(rate_err_b) +
           " (bound 0.02); frequency error " + fmt(freq_err) + " (bound 0.05)";
  return rate_err <= 0.02 && rate_err_b <= 0.02 && freq_err <= 0.05;
}

bool criterion_unstable_growth(SuiteContext&, std::string& detail) {
  RunConfig cfg = mode_run(reversed_setup(), 1, 1e-5, 0.01, 14.5, 10, 16, 18);
  const SimulationRun run = simulate(cfg);

  // fit only while the interface stays within the small-amplitude window
  SimulationRun window;
  window.N = run.N;
  window.dt = run.dt;
  for (size_t i = 0; i < run.times.size(); ++i) {
    if (max_abs(from_spectral(run.spectra[i])) > 1e-2) break;
    window.times.push_back(run.times[i]);
    window.spectra.push_back(run.spectra[i]);
  }
  const RateFit fit = fit_rate(window, 1);
  const double want = 6.0 / 13.0;
  const double err = std::abs(fit.rate - want) / want;
  detail = "growth rate " + fmt(fit.rate) + " vs " + fmt(want) + ", error " +
           fmt(err) + " (bound 0.02), " + std::to_string(fit.samples) +
           " samples";
  return err <= 0.02;
}

bool criterion_conservation(SuiteContext& ctx, std::string& detail) {
  std::mt19937 gen(20260814u);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const ProblemSetup su = (trial % 2 == 0) ? stable_setup() : coriolis_setup();
    const InterfaceShape s = random_shape(gen, 32, 4, 5e-3);
    const VelocityEval ve = evaluate_velocity(su, s, 32);
    worst = std::max(worst, ve.conservation);
  }
  // one shape at the larger reference amplitude, on a finer grid
  double big = 0.0;
  {
    const InterfaceShape s = random_shape(gen, 64, 3, 0.05);
    const VelocityEval ve = evaluate_velocity(stable_setup(), s, 36);
    big = ve.conservation;
  }
  const double drift = ctx.stable_run().monitors.max_area_drift;
  detail = "max |weighted mean|/||F|| " + fmt(worst) + " over 100 shapes, " +
           fmt(big) + " at amplitude 0.05 (bound 1e-9); area drift " +
           fmt(drift) + " (bound 1e-6)";
  return worst <= 1e-9 && big <= 1e-9 && drift <= 1e-6;
}

bool criterion_linearization(SuiteContext&, std::string& detail) {
  const ProblemSetup su = stable_setup();
  const int N = 32, M = 24;
  const cplx q2 = compute_q_n(su.coeffs, su.sigma, su.R, 2);
  CircleFunction h = CircleFunction::zeros(N);
  for (int k = 0; k < N; ++k) h[k] = std::cos(2.0 * h.theta(k));

  const double eps[] = {1e-3, 5e-4, 2.5e-4};
  double D[3];
  for (int i = 0; i < 3; ++i) {
    CircleFunction scaled = h;
    for (double& v : scaled.v) v *= eps[i];
    const CircleFunction F = velocity_functional(su, InterfaceShape(scaled), M);
    double diff = 0.0;
    for (int k = 0; k < N; ++k)
      diff = std::max(diff, std::abs(F[k] - eps[i] * q2.real() * h[k]));
    D[i] = diff / (eps[i] * eps[i]);
  }
  const double r1 = D[0] / D[1];
  const double r2 = D[1] / D[2];
  detail = "quadratic residuals " + fmt(D[0]) + ", " + fmt(D[1]) + ", " +
           fmt(D[2]) + "; ratios " + fmt(r1) + ", " + fmt(r2) +
           " (bounds [0.75, 1.25])";
  return r1 >= 0.75 && r1 <= 1.25 && r2 >= 0.75 && r2 <= 1.25;
}

bool criterion_spectral_bound(SuiteContext&, std::string& detail) {
  std::mt19937 gen(987654321u);
  std::uniform_real_distribution<double> alpha(0.5, 3.0), beta(0.0, 2.0),
      gamma(0.0, 1.5), sig(0.5, 2.0), radius(2.0, 4.0);
  double min_margin = 1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    DerivedCoeffs c;
    c.alpha_i = alpha(gen);
    c.alpha_o = alpha(gen);
    c.beta_i = beta(gen);
    c.beta_o = beta(gen);
    c.gamma_i = gamma(gen);
    c.gamma_o = gamma(gen);
    const double sigma = sig(gen);
    const double R = radius(gen);
    const ProblemSetup su = make_setup(c, sigma, R);

    double max_re = -1e300;
    for (int n = 1; n <= 256; ++n) {
      max_re = std::max(max_re, compute_q_n(su.coeffs, sigma, R, n).real());
      max_re = std::max(max_re, compute_q_n(su.coeffs, sigma, R, -n).real());
    }
    const double ls = spectral_bound(su.coeffs);
    min_margin = std::min(min_margin, ls - max_re);
    if (max_re >= ls) {
      detail = "bound violated on draw " + std::to_string(trial) + ": max Re q " +
               fmt(max_re) + " vs lambda* " + fmt(ls);
      return false;
    }

    const Verdict v = classify_stability(su.coeffs, sigma, R, 256);
    const double scale = std::abs(compute_q_n(su.coeffs, sigma, R, 2).real()) + 1.0;
    const Verdict from_spectrum = (max_re > 1e-12 * scale) ? Verdict::Unstable
                                                           : Verdict::Stable;
    if (v != from_spectrum) {
      detail = "classifier disagrees with the sign pattern on draw " +
               std::to_string(trial);
      return false;
    }
  }
  detail = "1000 draws, min margin lambda* - max Re q = " + fmt(min_margin) +
           "; classifier consistent on all draws";
  return true;
}

bool criterion_structure(SuiteContext& ctx, std::string& detail) {
  std::ostringstream why;
  bool ok = true;

  const SimulationRun& run = ctx.stable_run();
  double herm = 0.0;
  for (const SpectralCoeffs& c : run.spectra) {
    double scale = 0.0, dev = 0.0;
    for (int n = 0; n <= c.n_max(); ++n) {
      scale = std::max({scale, std::abs(c.at(n)), std::abs(c.at(-n))});
      dev = std::max(dev, std::abs(c.at(n) - std::conj(c.at(-n))));
    }
    herm = std::max(herm, dev / std::max(scale, 1e-300));
  }
  if (!(herm <= 1e-12)) {
    ok = false;
    why << "evolved spectra Hermitian deviation " << fmt(herm) << "; ";
  }

  std::mt19937 gen(424242u);
  std::uniform_real_distribution<double> u(0.5, 2.5);
  DerivedCoeffs rnd;
  rnd.alpha_i = u(gen);
  rnd.alpha_o = u(gen);
  rnd.beta_i = u(gen) - 0.5;
  rnd.beta_o = u(gen) - 0.5;
  rnd.gamma_i = u(gen) - 0.5;
  rnd.gamma_o = u(gen) - 0.5;
  const ProblemSetup sets[] = {stable_setup(), coriolis_setup(),
                               make_setup(rnd, 1.3, 2.7)};
  for (const ProblemSetup& su : sets) {
    for (int n = 1; n <= 64; ++n) {
      const cplx qp = compute_q_n(su.coeffs, su.sigma, su.R, n);
      const cplx qm = compute_q_n(su.coeffs, su.sigma, su.R, -n);
      if (std::abs(qm - std::conj(qp)) > 1e-14 * std::abs(qp)) {
        ok = false;
        why << "q_{-n} != conj(q_n) at n = " << n << "; ";
        break;
      }
    }
    const DispersionTable t = build_dispersion_table(su.coeffs, su.sigma, su.R, 64);
    const double limit = su.coeffs.alpha_o + su.coeffs.alpha_i;
    // strictly decreasing until the geometric tail drops below double
    // resolution, never increasing after that
    double prev = 1e300;
    for (int n = 1; n <= 64; ++n) {
      const double A = t.mode(n).A_n;
      const bool strict_regime = n <= 10;
      if ((strict_regime && !(A < prev)) || !(A <= prev)) {
        ok = false;
        why << "A_n not monotone at n = " << n << "; ";
        break;
      }
      prev = A;
    }
    if (std::abs(t.mode(64).A_n - limit) > 1e-12) {
      ok = false;
      why << "A_64 limit off by " << fmt(std::abs(t.mode(64).A_n - limit)) << "; ";
    }
    const double B = su.coeffs.beta_o - su.coeffs.beta_i;
    const double cubic_limit = -su.sigma * limit / (limit * limit + B * B);
    const double got = t.mode(64).q_n.real() / (64.0 * 64.0 * 64.0);
    if (std::abs(got - cubic_limit) > 0.02 * std::abs(cubic_limit)) {
      ok = false;
      why << "Re q_n / n^3 at 64 is " << fmt(got) << " vs " << fmt(cubic_limit)
          << "; ";
    }
  }

  detail = ok ? "Hermitian deviation " + fmt(herm) +
                    "; conjugate symmetry, A_n monotonicity and the cubic "
                    "tail hold on all parameter sets"
              : why.str();
  return ok;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const VerifyOptions& opt) {
  SuiteContext ctx;
  ctx.opt = opt;

  struct Entry {
    int id;
    const char* name;
    std::function<bool(SuiteContext&, std::string&)> fn;
  };
  const Entry entries[] = {
      {1, "dispersion oracle equivalence", criterion_dispersion_oracle},
      {2, "known spectral values", criterion_known_values},
      {3, "elliptic solvers vs exact modes", criterion_elliptic_vs_exact},
      {4, "stable regime decay rate", criterion_stable_decay},
      {5, "unstable regime growth rate", criterion_unstable_growth},
      {6, "mass conservation and area drift", criterion_conservation},
      {7, "linearization consistency", criterion_linearization},
      {8, "spectral bound and classifier", criterion_spectral_bound},
      {9, "structural invariants", criterion_structure},
  };

  std::vector<CriterionResult> out;
  for (const Entry& e : entries) {
    if (!opt.criteria.empty() &&
        std::find(opt.criteria.begin(), opt.criteria.end(), e.id) ==
            opt.criteria.end())
      continue;
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.passed = e.fn(ctx, r.detail);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hsc
