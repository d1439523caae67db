#include "hsc/evolution.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "hsc/errors.hpp"

namespace hsc {

namespace {

constexpr int kMaxApplications = 200;
constexpr double kKrylovTol = 1e-12;    // relative 2-norm target inside GMRES
constexpr double kResidualTol = 1e-10;  // relative inf-norm bound on the true residual
constexpr double kRegimeBound = 0.125;
constexpr double kFitFloor = 1e-14;
constexpr int kFitMinSamples = 10;

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd to_vec(const CircleFunction& f) {
  return Eigen::Map<const VectorXd>(f.v.data(), f.size());
}

CircleFunction to_fun(const VectorXd& v) {
  return CircleFunction(std::vector<double>(v.data(), v.data() + v.size()));
}

double slope_of(const std::vector<double>& t, const std::vector<double>& y,
                double* rms = nullptr) {
  const size_t m = t.size();
  double tm = 0.0, ym = 0.0;
  for (size_t i = 0; i < m; ++i) {
    tm += t[i];
    ym += y[i];
  }
  tm /= static_cast<double>(m);
  ym /= static_cast<double>(m);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < m; ++i) {
    num += (t[i] - tm) * (y[i] - ym);
    den += (t[i] - tm) * (t[i] - tm);
  }
  if (den == 0.0) throw fit_error("rate fit needs snapshots at distinct times");
  const double s = num / den;
  if (rms) {
    double r2 = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double r = y[i] - ym - s * (t[i] - tm);
      r2 += r * r;
    }
    *rms = std::sqrt(r2 / static_cast<double>(m));
  }
  return s;
}

}  // namespace

struct ResolventOperator::Impl {
  ProblemSetup setup;
  int N;
  GeneralSolver gs;
  std::vector<std::complex<double>> precond;  // (1 - l_n)^{-1}, 1 at n = 0

  Impl(const ProblemSetup& su, const InterfaceShape& s, int M)
      : setup(su), N(s.size()), gs(su.coeffs, s, su.R, M) {
    precond.resize(static_cast<size_t>(N) + 1);
    for (int n = -N / 2; n <= N / 2; ++n) {
      if (n == 0) {
        precond[static_cast<size_t>(n + N / 2)] = 1.0;
        continue;
      }
      const std::complex<double> one_minus = 1.0 - compute_l_n(setup.coeffs, setup.R, n);
      if (std::abs(one_minus) < 1e-13)
        throw operator_inversion_error(
            "resolvent multiplier 1 - l_n vanishes at n = " + std::to_string(n));
      precond[static_cast<size_t>(n + N / 2)] = 1.0 / one_minus;
    }
  }

  CircleFunction apply(const CircleFunction& z) const {
    auto inner = gs.solve_inner(z);
    const CircleFunction trace = gs.inner_trace(inner.first);
    auto outer = gs.solve_outer(trace);
    return outer.second.flux;
  }

  CircleFunction precondition(const CircleFunction& u) const {
    return from_spectral(apply_multiplier(to_spectral(u), precond));
  }

  void check_size(const CircleFunction& z) const {
    if (z.size() != N)
      throw validation_error("angular grid mismatch: operator built for N = " +
                             std::to_string(N) + ", data has N = " +
                             std::to_string(z.size()));
  }
};

ResolventOperator::ResolventOperator(const ProblemSetup& setup,
                                     const InterfaceShape& s, int M)
    : impl_(std::make_unique<Impl>(setup, s, M)) {}

ResolventOperator::~ResolventOperator() = default;
ResolventOperator::ResolventOperator(ResolventOperator&&) noexcept = default;

const GeneralSolver& ResolventOperator::elliptic() const { return impl_->gs; }

CircleFunction ResolventOperator::apply(const CircleFunction& z) const {
  impl_->check_size(z);
  return impl_->apply(z);
}

CircleFunction ResolventOperator::solve(const CircleFunction& rhs,
                                        int* iterations) const {
  impl_->check_size(rhs);
  const int N = impl_->N;
  const VectorXd b = to_vec(rhs);
  const double beta = b.norm();
  const double b_inf = max_abs(rhs);
  if (iterations) *iterations = 0;
  if (beta == 0.0) return CircleFunction::zeros(N);

  const int maxit = std::min(kMaxApplications - 1, 2 * N);
  MatrixXd V(N, maxit + 1);
  MatrixXd H = MatrixXd::Zero(maxit + 1, maxit);
  std::vector<double> cs(static_cast<size_t>(maxit)), sn(static_cast<size_t>(maxit));
  VectorXd g = VectorXd::Zero(maxit + 1);
  V.col(0) = b / beta;
  g(0) = beta;

  int applications = 0;
  int k = 0;
  double res = beta;
  for (int j = 0; j < maxit && res > kKrylovTol * beta; ++j) {
    const CircleFunction zj = impl_->precondition(to_fun(V.col(j)));
    ++applications;
    VectorXd w = to_vec(zj) - to_vec(impl_->apply(zj));
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        const double h = w.dot(V.col(i));
        H(i, j) += h;
        w -= h * V.col(i);
      }
    }
    H(j + 1, j) = w.norm();
    if (H(j + 1, j) > 0.0) V.col(j + 1) = w / H(j + 1, j);

    for (int i = 0; i < j; ++i) {
      const double t = cs[static_cast<size_t>(i)] * H(i, j) +
                       sn[static_cast<size_t>(i)] * H(i + 1, j);
      H(i + 1, j) = -sn[static_cast<size_t>(i)] * H(i, j) +
                    cs[static_cast<size_t>(i)] * H(i + 1, j);
      H(i, j) = t;
    }
    const double denom = std::hypot(H(j, j), H(j + 1, j));
    if (denom == 0.0) {
      cs[static_cast<size_t>(j)] = 1.0;
      sn[static_cast<size_t>(j)] = 0.0;
    } else {
      cs[static_cast<size_t>(j)] = H(j, j) / denom;
      sn[static_cast<size_t>(j)] = H(j + 1, j) / denom;
    }
    H(j, j) = cs[static_cast<size_t>(j)] * H(j, j) +
              sn[static_cast<size_t>(j)] * H(j + 1, j);
    H(j + 1, j) = 0.0;
    g(j + 1) = -sn[static_cast<size_t>(j)] * g(j);
    g(j) = cs[static_cast<size_t>(j)] * g(j);
    res = std::abs(g(j + 1));
    k = j + 1;
  }

  const VectorXd y =
      H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
  const CircleFunction w_out = impl_->precondition(to_fun(V.leftCols(k) * y));

  if (applications >= kMaxApplications)
    throw operator_inversion_error(
        "resolvent solve exceeded " + std::to_string(kMaxApplications) +
        " operator applications");
  const CircleFunction Rw = impl_->apply(w_out);
  double res_inf = 0.0;
  for (int i = 0; i < N; ++i)
    res_inf = std::max(res_inf, std::abs(rhs[i] - (w_out[i] - Rw[i])));
  if (res_inf > kResidualTol * b_inf) {
    std::ostringstream os;
    os << "resolvent solve stalled: residual " << res_inf << " exceeds "
       << kResidualTol << " * " << b_inf << " after " << k << " iterations";
    throw operator_inversion_error(os.str());
  }
  if (iterations) *iterations = k;
  return w_out;
}

CircleFunction apply_R(const ProblemSetup& setup, const InterfaceShape& s,
                       const CircleFunction& z, int M) {
  return ResolventOperator(setup, s, M).apply(z);
}

CircleFunction invert_one_minus_R(const ProblemSetup& setup,
                                  const InterfaceShape& s,
                                  const CircleFunction& rhs, int M) {
  return ResolventOperator(setup, s, M).solve(rhs);
}

namespace {

VelocityEval velocity_with(const ResolventOperator& op, const ProblemSetup& setup,
                           const InterfaceShape& s) {
  CircleFunction data = curvature_functional(s, setup.coeffs, setup.sigma);
  for (double& v : data.v) v = -v;
  auto outer = op.elliptic().solve_outer(data);

  VelocityEval out;
  out.F = op.solve(outer.second.flux, &out.krylov_iterations);

  const int N = s.size();
  double weighted = 0.0;
  for (int k = 0; k < N; ++k) weighted += (1.0 + s.rho[k]) * out.F[k];
  weighted *= 2.0 * M_PI / N;
  const double scale = max_abs(out.F);
  out.conservation = (scale > 0.0) ? std::abs(weighted) / scale : std::abs(weighted);
  return out;
}

}  // namespace

VelocityEval evaluate_velocity(const ProblemSetup& setup, const InterfaceShape& s,
                               int M) {
  const ResolventOperator op(setup, s, M);
  return velocity_with(op, setup, s);
}

CircleFunction velocity_functional(const ProblemSetup& setup,
                                   const InterfaceShape& s, int M) {
  return evaluate_velocity(setup, s, M).F;
}

SpectralCoeffs enforce_hermitian(const SpectralCoeffs& c, double tol) {
  const int N = c.N;
  double scale = 0.0;
  double dev = 0.0;
  for (int n = 0; n <= N / 2; ++n) {
    scale = std::max(scale, std::abs(c.at(n)));
    scale = std::max(scale, std::abs(c.at(-n)));
    dev = std::max(dev, std::abs(c.at(n) - std::conj(c.at(-n))));
  }
  if (dev > tol * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "Hermitian symmetry broken: deviation " << dev << " at scale " << scale;
    throw symmetry_error(os.str());
  }
  SpectralCoeffs out = SpectralCoeffs::zeros(N);
  out.at(0) = std::complex<double>(c.at(0).real(), 0.0);
  for (int n = 1; n <= N / 2; ++n) {
    const std::complex<double> avg = 0.5 * (c.at(n) + std::conj(c.at(-n)));
    out.at(n) = avg;
    out.at(-n) = std::conj(avg);
  }
  return out;
}

SimulationState step_imex(const ProblemSetup& setup, const SimulationState& state,
                          double dt, int M) {
  if (!(dt > 0.0)) throw validation_error("dt must be positive");
  const CircleFunction& rho = state.shape.rho;
  const int N = rho.size();

  SimulationState next = state;
  next.t = state.t + dt;

  const bool at_rest =
      std::all_of(rho.v.begin(), rho.v.end(), [](double v) { return v == 0.0; });
  if (at_rest) return next;  // exact equilibrium, kept bitwise

  const ResolventOperator op(setup, state.shape, M);
  const VelocityEval ve = velocity_with(op, setup, state.shape);

  const SpectralCoeffs rho_hat = to_spectral(rho);
  const SpectralCoeffs F_hat = to_spectral(ve.F);
  SpectralCoeffs out = SpectralCoeffs::zeros(N);
  for (int n = -N / 2; n <= N / 2; ++n) {
    const std::complex<double> q =
        (n == 0) ? 0.0 : compute_q_n(setup.coeffs, setup.sigma, setup.R, n);
    const std::complex<double> stiff = F_hat.at(n) - q * rho_hat.at(n);
    out.at(n) = (rho_hat.at(n) + dt * stiff) / (1.0 - dt * q);
  }
  out = dealias(out);

  double dev = 0.0, scale = 0.0;
  for (int n = 0; n <= N / 2; ++n) {
    scale = std::max({scale, std::abs(out.at(n)), std::abs(out.at(-n))});
    dev = std::max(dev, std::abs(out.at(n) - std::conj(out.at(-n))));
  }
  out = enforce_hermitian(out);
  CircleFunction new_rho = from_spectral(out);

  const double amp = max_abs(new_rho);
  if (amp >= kRegimeBound) {
    std::ostringstream os;
    os << "interface amplitude " << amp << " reached the regime bound "
       << kRegimeBound << " at t = " << next.t;
    throw regime_error(os.str());
  }
  next.shape = InterfaceShape(std::move(new_rho));

  Monitors& m = next.monitors;
  m.max_rho_inf = std::max(m.max_rho_inf, amp);
  m.max_conservation = std::max(m.max_conservation, ve.conservation);
  m.max_krylov_iterations = std::max(m.max_krylov_iterations, ve.krylov_iterations);
  m.max_hermitian_dev = std::max(m.max_hermitian_dev, dev / std::max(1.0, scale));
  if (state.area0 > 0.0) {
    const double drift =
        std::abs(enclosed_area(next.shape) - state.area0) / state.area0;
    m.max_area_drift = std::max(m.max_area_drift, drift);
  }
  return next;
}

double default_time_step(const ProblemSetup& setup) {
  double qmax = 0.0;
  for (int n = 1; n <= 8; ++n)
    qmax = std::max(qmax,
                    std::abs(compute_q_n(setup.coeffs, setup.sigma, setup.R, n)));
  if (qmax == 0.0) return 0.1;
  return std::min(0.1, 1.0 / (2.0 * qmax));
}

SimulationRun simulate(const RunConfig& cfg) { return simulate(cfg, nullptr); }

SimulationRun simulate(const RunConfig& cfg, const SnapshotCallback& cb) {
  const SpectralCoeffs rho0_hat = initial_spectrum(cfg);
  const CircleFunction rho0 = from_spectral(rho0_hat);
  SimulationState state{0.0, InterfaceShape(rho0), 0.0, {}};
  state.area0 = enclosed_area(state.shape);
  state.monitors.max_rho_inf = max_abs(rho0);

  const double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(cfg.setup);
  SimulationRun run;
  run.N = cfg.grid.N;
  run.dt = dt;

  const auto record = [&](const SimulationState& st) {
    const SpectralCoeffs c = to_spectral(st.shape.rho);
    const double a = enclosed_area(st.shape);
    run.times.push_back(st.t);
    run.spectra.push_back(c);
    run.areas.push_back(a);
    if (cb) cb(st.t, c, a);
  };
  record(state);

  const long steps = std::lround(std::ceil(cfg.t_end / dt - 1e-9));
  for (long i = 0; i < steps; ++i) {
    state = step_imex(cfg.setup, state, dt, cfg.grid.M);
    if ((i + 1) % cfg.snapshot_every == 0 || i + 1 == steps) record(state);
  }
  run.monitors = state.monitors;
  return run;
}

RateFit fit_rate(const SimulationRun& run, int n) {
  if (run.times.size() != run.spectra.size())
    throw internal_consistency_error("run snapshots are inconsistent");
  std::vector<double> t, logamp, phase;
  std::complex<double> prev;
  for (size_t i = 0; i < run.times.size(); ++i) {
    const SpectralCoeffs& c = run.spectra[i];
    if (std::abs(n) > c.n_max())
      throw range_error("mode " + std::to_string(n) + " outside the stored band");
    const std::complex<double> z = c.at(n);
    if (std::abs(z) <= kFitFloor) continue;
    t.push_back(run.times[i]);
    logamp.push_back(std::log(std::abs(z)));
    if (phase.empty()) {
      phase.push_back(std::arg(z));
    } else {
      phase.push_back(phase.back() + std::arg(z / prev));
    }
    prev = z;
  }
  if (t.size() < static_cast<size_t>(kFitMinSamples)) {
    std::ostringstream os;
    os << "rate fit for mode " << n << " needs at least " << kFitMinSamples
       << " snapshots with |coefficient| > " << kFitFloor << ", found " << t.size();
    throw fit_error(os.str());
  }
  RateFit fit;
  fit.n = n;
  fit.samples = static_cast<int>(t.size());
  fit.rate = slope_of(t, logamp, &fit.residual);
  fit.frequency = slope_of(t, phase);
  return fit;
}

}  // namespace hsc
