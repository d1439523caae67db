#pragma once

#include <functional>
#include <memory>

#include "hsc/config.hpp"
#include "hsc/dispersion.hpp"
#include "hsc/elliptic.hpp"
#include "hsc/geometry.hpp"

namespace hsc {

struct Monitors {
  double max_rho_inf = 0.0;
  double max_area_drift = 0.0;       // relative to the initial area
  double max_conservation = 0.0;     // |Int (1+rho) F| / ||F||_inf
  double max_hermitian_dev = 0.0;
  int max_krylov_iterations = 0;
};

struct SimulationState {
  double t = 0.0;
  InterfaceShape shape;
  double area0 = 0.0;
  Monitors monitors;
};

struct SimulationRun {
  int N = 0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<SpectralCoeffs> spectra;
  std::vector<double> areas;
  Monitors monitors;
};

struct RateFit {
  int n = 0;
  double rate = 0.0;       // d/dt log |rho_hat_n|
  double frequency = 0.0;  // d/dt arg rho_hat_n
  double residual = 0.0;   // rms residual of the log-amplitude line
  int samples = 0;
};

// R(rho) z = B_o(rho) T(rho, S(rho, z)|_{S^1}) with both elliptic systems
// assembled and factored once per shape.
class ResolventOperator {
 public:
  ResolventOperator(const ProblemSetup& setup, const InterfaceShape& s, int M);
  ~ResolventOperator();
  ResolventOperator(ResolventOperator&&) noexcept;

  CircleFunction apply(const CircleFunction& z) const;
  // (1 - R)^{-1} rhs by preconditioned GMRES; residual <= 1e-10 ||rhs||_inf.
  // Throws operator_inversion_error after 200 applications of R.
  CircleFunction solve(const CircleFunction& rhs, int* iterations = nullptr) const;

  const GeneralSolver& elliptic() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

CircleFunction apply_R(const ProblemSetup& setup, const InterfaceShape& s,
                       const CircleFunction& z, int M = 24);
CircleFunction invert_one_minus_R(const ProblemSetup& setup,
                                  const InterfaceShape& s,
                                  const CircleFunction& rhs, int M = 24);

struct VelocityEval {
  CircleFunction F;
  double conservation = 0.0;  // |Int (1+rho) F| / ||F||_inf
  int krylov_iterations = 0;
};

// F(rho) = (1 - R(rho))^{-1} B_o(rho) T(rho, -K(rho))
VelocityEval evaluate_velocity(const ProblemSetup& setup, const InterfaceShape& s,
                               int M);
CircleFunction velocity_functional(const ProblemSetup& setup,
                                   const InterfaceShape& s, int M = 24);

// One first-order IMEX step: the diagonal q_n part implicit, the remainder
// explicit. Dealiases and re-enforces Hermitian symmetry; throws regime_error
// when ||rho||_inf reaches 1/8.
SimulationState step_imex(const ProblemSetup& setup, const SimulationState& state,
                          double dt, int M = 24);

// dt rule used when the config leaves dt unset:
// min(0.1, 1 / (2 max_{1<=n<=8} |q_n|)).
double default_time_step(const ProblemSetup& setup);

using SnapshotCallback =
    std::function<void(double t, const SpectralCoeffs& rho_hat, double area)>;

SimulationRun simulate(const RunConfig& cfg);
SimulationRun simulate(const RunConfig& cfg, const SnapshotCallback& cb);

// Least-squares exponential fit of mode n over the run's snapshots.
// Throws fit_error with fewer than 10 usable samples.
RateFit fit_rate(const SimulationRun& run, int n);

// Symmetrize c_{-n} <- conj(c_n); throws symmetry_error if the prior
// deviation exceeds tol relative to the coefficient scale.
SpectralCoeffs enforce_hermitian(const SpectralCoeffs& c, double tol = 1e-9);

}  // namespace hsc
