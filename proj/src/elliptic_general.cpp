#include <cmath>
#include <mutex>
#include <numbers>

#include "hsc/elliptic.hpp"

namespace hsc {

namespace {

constexpr double kSolverTol = 1e-10;

struct AssembledSystem {
  Eigen::MatrixXd A;       // row-equilibrated
  Eigen::VectorXd rscale;  // original row inf-norms
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  double norm_inf_orig = 0.0;

  void factor() {
    const Eigen::Index n = A.rows();
    rscale.resize(n);
    norm_inf_orig = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = A.row(i).cwiseAbs().maxCoeff();
      double sum = A.row(i).cwiseAbs().sum();
      norm_inf_orig = std::max(norm_inf_orig, sum);
      if (s <= 0.0) s = 1.0;
      rscale[i] = s;
      A.row(i) /= s;
    }
    lu.compute(A);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b, const char* what) const {
    Eigen::VectorXd bs = b.cwiseQuotient(rscale);
    Eigen::VectorXd x = lu.solve(bs);
    Eigen::VectorXd rs = A * x - bs;
    const double res = (rs.cwiseProduct(rscale)).cwiseAbs().maxCoeff();
    const double scale = std::max({b.cwiseAbs().maxCoeff(),
                                   norm_inf_orig * x.cwiseAbs().maxCoeff(), 1e-300});
    if (!(res <= kSolverTol * scale))
      throw solver_error(std::string(what) + ": linear solve residual " +
                         std::to_string(res) + " exceeds tolerance " +
                         std::to_string(kSolverTol * scale));
    return x;
  }
};

struct MapData {
  double f, fr, ft, frr, frt, ftt;
};

}  // namespace

struct GeneralSolver::Impl {
  DerivedCoeffs c;
  InterfaceShape shape;
  double R;
  int M, N;

  std::vector<double> rho, rho1, rho2;
  std::vector<double> Dt1, Dt2;  // N x N, row-major

  RadialLayout disk_lay, ann_lay;

  mutable std::mutex mtx;
  mutable std::unique_ptr<AssembledSystem> inner, outer;

  // boundary operator weights at r = 1 for both phases
  std::vector<double> w_r_i, w_t_i, w_r_o, w_t_o;

  Impl(const DerivedCoeffs& cc, const InterfaceShape& ss, double RR, int MM)
      : c(cc), shape(ss), R(RR), M(MM), N(ss.size()) {
    rho = shape.rho.v;
    rho1 = differentiate(shape.rho, 1).v;
    rho2 = differentiate(shape.rho, 2).v;
    Dt1 = differentiation_matrix(N, 1);
    Dt2 = differentiation_matrix(N, 2);
    disk_lay = make_disk_layout(M);
    ann_lay = make_annulus_layout(M, R);
    w_r_i.resize(N);
    w_t_i.resize(N);
    w_r_o.resize(N);
    w_t_o.resize(N);
    for (int k = 0; k < N; ++k) {
      const double u = 1.0 + rho[static_cast<size_t>(k)];
      const double rd = rho1[static_cast<size_t>(k)];
      const double ti2 = c.alpha_i * c.alpha_i + c.beta_i * c.beta_i;
      const double to2 = c.alpha_o * c.alpha_o + c.beta_o * c.beta_o;
      w_r_i[static_cast<size_t>(k)] =
          -(c.alpha_i * (1.0 + rd * rd / (u * u))) / ti2;
      w_t_i[static_cast<size_t>(k)] =
          -(-c.alpha_i * rd / (u * u) - c.beta_i / u) / ti2;
      w_r_o[static_cast<size_t>(k)] =
          -(c.alpha_o * (1.0 + rd * rd / (u * u))) / to2;
      w_t_o[static_cast<size_t>(k)] =
          -(-c.alpha_o * rd / (u * u) - c.beta_o / u) / to2;
    }
  }

  int idx(int j, int k) const { return j * N + k; }

  MapData map_at(double r, int k) const {
    const double s = r - 1.0;
    const double p = cutoff(s), p1 = cutoff_d1(s), p2 = cutoff_d2(s);
    const double rk = rho[static_cast<size_t>(k)];
    const double r1 = rho1[static_cast<size_t>(k)];
    const double r2 = rho2[static_cast<size_t>(k)];
    MapData m;
    m.f = r + p * rk;
    m.fr = 1.0 + p1 * rk;
    m.ft = p * r1;
    m.frr = p2 * rk;
    m.frt = p1 * r1;
    m.ftt = p * r2;
    return m;
  }

  // Fill one collocation row of the pulled-back Laplacian.
  void pde_row(Eigen::MatrixXd& A, int row, const RadialLayout& lay, int e, int i,
               int k) const {
    const RadialElement& el = lay.elems[static_cast<size_t>(e)];
    const int j = el.g0 + i;
    const double r = lay.r[static_cast<size_t>(j)];
    const MapData m = map_at(r, k);
    const double c0 = m.ft / m.fr;
    const double cr = (m.frt * m.fr - m.ft * m.frr) / (m.fr * m.fr);
    const double ct = (m.ftt * m.fr - m.ft * m.frt) / (m.fr * m.fr);
    const double f2 = m.f * m.f;
    const double arr = 1.0 / (m.fr * m.fr) + c0 * c0 / f2;
    const double att = 1.0 / f2;
    const double art = -2.0 * c0 / f2;
    const double ar = -m.frr / (m.fr * m.fr * m.fr) + 1.0 / (m.f * m.fr) +
                      (c0 * cr - ct) / f2;
    const int mcount = el.count();
    const int kop = (k + N / 2) % N;
    for (int i2 = 0; i2 < mcount; ++i2) {
      const int col = idx(el.g0 + i2, k);
      A(row, col) += arr * el.D2(i, i2) + ar * el.D1(i, i2);
    }
    for (int k2 = 0; k2 < N; ++k2)
      A(row, idx(j, k2)) += att * Dt2[static_cast<size_t>(k) * N + k2];
    for (int i2 = 0; i2 < mcount; ++i2) {
      const double d1 = art * el.D1(i, i2);
      if (d1 != 0.0) {
        const int base = el.g0 + i2;
        for (int k2 = 0; k2 < N; ++k2)
          A(row, idx(base, k2)) += d1 * Dt1[static_cast<size_t>(k) * N + k2];
      }
    }
    if (el.parity) {
      for (int i2 = 0; i2 < mcount; ++i2) {
        const int col = idx(el.g0 + i2, kop);
        A(row, col) += arr * el.D2m(i, i2) + ar * el.D1m(i, i2);
      }
      for (int i2 = 0; i2 < mcount; ++i2) {
        const double d1 = art * el.D1m(i, i2);
        if (d1 != 0.0) {
          const int base = el.g0 + i2;
          for (int k2 = 0; k2 < N; ++k2)
            A(row, idx(base, k2)) += d1 * Dt1[static_cast<size_t>(kop) * N + k2];
        }
      }
    }
  }

  void c1_row(Eigen::MatrixXd& A, int row, const RadialLayout& lay, int eL,
              int k) const {
    const RadialElement& left = lay.elems[static_cast<size_t>(eL)];
    const RadialElement& right = lay.elems[static_cast<size_t>(eL + 1)];
    const int iL = left.count() - 1;
    for (int i2 = 0; i2 < left.count(); ++i2)
      A(row, idx(left.g0 + i2, k)) += left.D1(iL, i2);
    if (left.parity) {
      const int kop = (k + N / 2) % N;
      for (int i2 = 0; i2 < left.count(); ++i2)
        A(row, idx(left.g0 + i2, kop)) += left.D1m(iL, i2);
    }
    for (int i2 = 0; i2 < right.count(); ++i2)
      A(row, idx(right.g0 + i2, k)) -= right.D1(0, i2);
  }

  const AssembledSystem& inner_system() const {
    std::lock_guard<std::mutex> lock(mtx);
    if (inner) return *inner;
    auto sys = std::make_unique<AssembledSystem>();
    const int n = M * N + 1;
    sys->A.setZero(n, n);
    Eigen::MatrixXd& A = sys->A;
    const RadialLayout& lay = disk_lay;
    for (int k = 0; k < N; ++k) {
      // interior collocation rows
      for (size_t e = 0; e < lay.elems.size(); ++e) {
        const RadialElement& el = lay.elems[e];
        // first node of later elements is a shared edge (C1 row), the last
        // node of every element is either a C1 row or the r = 1 flux row
        const int lo = (e == 0) ? 0 : 1;
        for (int i = lo; i < el.count() - 1; ++i)
          pde_row(A, idx(el.g0 + i, k), lay, static_cast<int>(e), i, k);
      }
      // C1 matching rows at the element interfaces
      for (size_t e = 0; e + 1 < lay.elems.size(); ++e)
        c1_row(A, idx(lay.interface_nodes[e], k), lay, static_cast<int>(e), k);
      // flux condition at r = 1 with the bordered column
      const RadialElement& top = lay.elems.back();
      const int row = idx(M - 1, k);
      const int iL = top.count() - 1;
      for (int i2 = 0; i2 < top.count(); ++i2)
        A(row, idx(top.g0 + i2, k)) += w_r_i[static_cast<size_t>(k)] * top.D1(iL, i2);
      for (int k2 = 0; k2 < N; ++k2)
        A(row, idx(M - 1, k2)) +=
            w_t_i[static_cast<size_t>(k)] * Dt1[static_cast<size_t>(k) * N + k2];
      A(row, M * N) = 1.0;
    }
    // mean constraint over the unit circle
    const double wq = 2.0 * std::numbers::pi / N;
    for (int k = 0; k < N; ++k) A(M * N, idx(M - 1, k)) = wq;
    sys->factor();
    inner = std::move(sys);
    return *inner;
  }

  const AssembledSystem& outer_system() const {
    std::lock_guard<std::mutex> lock(mtx);
    if (outer) return *outer;
    auto sys = std::make_unique<AssembledSystem>();
    const int n = M * N;
    sys->A.setZero(n, n);
    Eigen::MatrixXd& A = sys->A;
    const RadialLayout& lay = ann_lay;
    for (int k = 0; k < N; ++k) {
      for (size_t e = 0; e < lay.elems.size(); ++e) {
        const RadialElement& el = lay.elems[e];
        // r = 1 gets the Dirichlet row, r = R the Robin row, shared edges C1
        for (int i = 1; i < el.count() - 1; ++i)
          pde_row(A, idx(el.g0 + i, k), lay, static_cast<int>(e), i, k);
      }
      for (size_t e = 0; e + 1 < lay.elems.size(); ++e)
        c1_row(A, idx(lay.interface_nodes[e], k), lay, static_cast<int>(e), k);
      // Dirichlet trace at r = 1
      A(idx(0, k), idx(0, k)) = 1.0;
      // oblique Robin row at r = R: alpha_o d/dr - (beta_o / R) d/dtheta
      const RadialElement& top = lay.elems.back();
      const int row = idx(M - 1, k);
      const int iL = top.count() - 1;
      for (int i2 = 0; i2 < top.count(); ++i2)
        A(row, idx(top.g0 + i2, k)) += c.alpha_o * top.D1(iL, i2);
      for (int k2 = 0; k2 < N; ++k2)
        A(row, idx(M - 1, k2)) -=
            (c.beta_o / R) * Dt1[static_cast<size_t>(k) * N + k2];
    }
    sys->factor();
    outer = std::move(sys);
    return *outer;
  }

  // Flux of a disk field through the unit circle under B_i(rho).
  CircleFunction disk_flux(const Eigen::MatrixXd& vals) const {
    const RadialElement& top = disk_lay.elems.back();
    const int iL = top.count() - 1;
    CircleFunction out = CircleFunction::zeros(N);
    for (int k = 0; k < N; ++k) {
      double qr = 0.0;
      for (int i2 = 0; i2 < top.count(); ++i2)
        qr += top.D1(iL, i2) * vals(top.g0 + i2, k);
      double qt = 0.0;
      for (int k2 = 0; k2 < N; ++k2)
        qt += Dt1[static_cast<size_t>(k) * N + k2] * vals(M - 1, k2);
      out[k] = w_r_i[static_cast<size_t>(k)] * qr + w_t_i[static_cast<size_t>(k)] * qt;
    }
    return out;
  }

  // Flux of an annulus field through the unit circle under B_o(rho).
  CircleFunction annulus_flux(const Eigen::MatrixXd& vals) const {
    const RadialElement& bot = ann_lay.elems.front();
    CircleFunction out = CircleFunction::zeros(N);
    for (int k = 0; k < N; ++k) {
      double qr = 0.0;
      for (int i2 = 0; i2 < bot.count(); ++i2)
        qr += bot.D1(0, i2) * vals(bot.g0 + i2, k);
      double qt = 0.0;
      for (int k2 = 0; k2 < N; ++k2)
        qt += Dt1[static_cast<size_t>(k) * N + k2] * vals(0, k2);
      out[k] = w_r_o[static_cast<size_t>(k)] * qr + w_t_o[static_cast<size_t>(k)] * qt;
    }
    return out;
  }
};

GeneralSolver::GeneralSolver(const DerivedCoeffs& c, const InterfaceShape& s,
                             double R, int M)
    : impl_(std::make_unique<Impl>(c, s, R, M)) {}

GeneralSolver::~GeneralSolver() = default;
GeneralSolver::GeneralSolver(GeneralSolver&&) noexcept = default;
GeneralSolver& GeneralSolver::operator=(GeneralSolver&&) noexcept = default;

int GeneralSolver::angular_size() const { return impl_->N; }
int GeneralSolver::radial_size() const { return impl_->M; }

std::pair<DiskField, BoundaryFlux> GeneralSolver::solve_inner(
    const CircleFunction& h) const {
  const Impl& im = *impl_;
  if (h.size() != im.N)
    throw validation_error("solve_inner: data size does not match the grid");
  const AssembledSystem& sys = im.inner_system();
  const CircleFunction ph = projection(im.shape, h);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(im.M * im.N + 1);
  double hint = 0.0;
  for (int k = 0; k < im.N; ++k) {
    b[im.idx(im.M - 1, k)] = h[k] - ph[k];
    hint += h[k];
  }
  b[im.M * im.N] = 2.0 * std::numbers::pi / im.N * hint;
  Eigen::VectorXd x = sys.solve(b, "solve_inner");
  DiskField f;
  f.r = im.disk_lay.r;
  f.vals.resize(im.M, im.N);
  for (int j = 0; j < im.M; ++j)
    for (int k = 0; k < im.N; ++k) f.vals(j, k) = x[im.idx(j, k)];
  BoundaryFlux flux{im.disk_flux(f.vals)};
  return {std::move(f), std::move(flux)};
}

std::pair<AnnulusField, BoundaryFlux> GeneralSolver::solve_outer(
    const CircleFunction& g) const {
  const Impl& im = *impl_;
  if (g.size() != im.N)
    throw validation_error("solve_outer: data size does not match the grid");
  const AssembledSystem& sys = im.outer_system();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(im.M * im.N);
  for (int k = 0; k < im.N; ++k) b[im.idx(0, k)] = g[k];
  Eigen::VectorXd x = sys.solve(b, "solve_outer");
  AnnulusField f;
  f.r = im.ann_lay.r;
  f.R = im.R;
  f.vals.resize(im.M, im.N);
  for (int j = 0; j < im.M; ++j)
    for (int k = 0; k < im.N; ++k) f.vals(j, k) = x[im.idx(j, k)];
  BoundaryFlux flux{im.annulus_flux(f.vals)};
  return {std::move(f), std::move(flux)};
}

CircleFunction GeneralSolver::inner_trace(const DiskField& f) const {
  CircleFunction out = CircleFunction::zeros(impl_->N);
  for (int k = 0; k < impl_->N; ++k) out[k] = f.vals(impl_->M - 1, k);
  return out;
}

BoundaryFlux GeneralSolver::flux_inner(const DiskField& f) const {
  if (static_cast<int>(f.r.size()) != impl_->M ||
      f.angular_size() != impl_->N)
    throw validation_error("flux_inner: field grid does not match the solver");
  return {impl_->disk_flux(f.vals)};
}

std::pair<DiskField, BoundaryFlux> solve_inner_general(const DerivedCoeffs& c,
                                                       const InterfaceShape& s,
                                                       const CircleFunction& h,
                                                       int M) {
  GeneralSolver solver(c, s, 2.0, M);
  return solver.solve_inner(h);
}

std::pair<AnnulusField, BoundaryFlux> solve_outer_general(const DerivedCoeffs& c,
                                                          const InterfaceShape& s,
                                                          const CircleFunction& g,
                                                          double R, int M) {
  GeneralSolver solver(c, s, R, M);
  return solver.solve_outer(g);
}

BoundaryFlux boundary_flux_inner(const DerivedCoeffs& c, const InterfaceShape& s,
                                 const DiskField& field) {
  GeneralSolver solver(c, s, 2.0, static_cast<int>(field.r.size()));
  return solver.flux_inner(field);
}

}  // namespace hsc
