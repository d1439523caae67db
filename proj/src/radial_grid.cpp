#include "hsc/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hsc/errors.hpp"
#include "hsc/geometry.hpp"

namespace hsc {

void chebyshev_lobatto(int n, Eigen::VectorXd& x, Eigen::MatrixXd& D) {
  const int m = n + 1;
  x.resize(m);
  for (int j = 0; j <= n; ++j) x[j] = std::cos(std::numbers::pi * j / n);
  D.setZero(m, m);
  auto c = [&](int i) { return (i == 0 || i == n) ? 2.0 : 1.0; };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = (c(i) / c(j)) * sign / (x[i] - x[j]);
    }
  // negative-sum trick for the diagonal
  for (int i = 0; i <= n; ++i) D(i, i) = -D.row(i).sum();
}

namespace {

// Standard element on [lo, hi] with m nodes, reordered ascending.
RadialElement standard_element(double lo, double hi, int m) {
  Eigen::VectorXd x;
  Eigen::MatrixXd D;
  chebyshev_lobatto(m - 1, x, D);
  const double half = 0.5 * (hi - lo);
  Eigen::MatrixXd D1 = D / half;
  Eigen::MatrixXd D2 = (D * D) / (half * half);
  RadialElement e;
  e.nodes.resize(m);
  e.D1.resize(m, m);
  e.D2.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const int j = m - 1 - i;
    e.nodes[i] = lo + half * (x[j] + 1.0);
    for (int i2 = 0; i2 < m; ++i2) {
      const int j2 = m - 1 - i2;
      e.D1(i, i2) = D1(j, j2);
      e.D2(i, i2) = D2(j, j2);
    }
  }
  e.nodes[0] = lo;
  e.nodes[m - 1] = hi;
  return e;
}

// Positive half of a symmetric grid on [-ra, ra] with 2m points.
RadialElement core_element(double ra, int m) {
  Eigen::VectorXd x;
  Eigen::MatrixXd D;
  chebyshev_lobatto(2 * m - 1, x, D);
  Eigen::MatrixXd D1 = D / ra;
  Eigen::MatrixXd D2 = (D * D) / (ra * ra);
  RadialElement e;
  e.parity = true;
  e.nodes.resize(m);
  e.D1.resize(m, m);
  e.D2.resize(m, m);
  e.D1m.resize(m, m);
  e.D2m.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const int j = m - 1 - i;  // chebyshev index of ascending node i
    e.nodes[i] = ra * x[j];
    for (int i2 = 0; i2 < m; ++i2) {
      const int j2 = m - 1 - i2;
      e.D1(i, i2) = D1(j, j2);
      e.D2(i, i2) = D2(j, j2);
      e.D1m(i, i2) = D1(j, m + i2);
      e.D2m(i, i2) = D2(j, m + i2);
    }
  }
  e.nodes[m - 1] = ra;
  return e;
}

void split_counts(int M, int& m1, int& m2, int& m3) {
  if (M < 10)
    throw validation_error("radial node count M must be at least 10, got " +
                           std::to_string(M));
  const int total = M + 2;
  m1 = total / 3;
  m2 = total / 3;
  m3 = total / 3;
  int rem = total - 3 * (total / 3);
  if (rem > 0) ++m1;
  if (rem > 1) ++m2;
}

RadialLayout assemble(std::vector<RadialElement> elems, bool disk, double r_outer) {
  RadialLayout lay;
  lay.disk = disk;
  lay.r_outer = r_outer;
  int g = 0;
  for (size_t e = 0; e < elems.size(); ++e) {
    elems[e].g0 = g;
    const int m = elems[e].count();
    const int start = (e == 0) ? 0 : 1;  // shared edge already emitted
    for (int i = start; i < m; ++i) lay.r.push_back(elems[e].nodes[i]);
    g += m - 1;
    if (e + 1 < elems.size()) lay.interface_nodes.push_back(g);
  }
  lay.elems = std::move(elems);
  return lay;
}

}  // namespace

RadialLayout make_disk_layout(int M) {
  int m1, m2, m3;
  split_counts(M, m1, m2, m3);
  const double a = kCollarHalfWidth;
  std::vector<RadialElement> elems;
  elems.push_back(core_element(1.0 - 3.0 * a, m1));
  elems.push_back(standard_element(1.0 - 3.0 * a, 1.0 - a, m2));
  elems.push_back(standard_element(1.0 - a, 1.0, m3));
  return assemble(std::move(elems), true, 1.0);
}

RadialLayout make_annulus_layout(int M, double R) {
  if (!(R >= 2.0)) throw validation_error("annulus layout needs R >= 2");
  int m1, m2, m3;
  split_counts(M, m1, m2, m3);
  // The middle element carries the whole cutoff transition and limits the
  // radial accuracy, so it gets the largest share of nodes; the outer
  // element only sees smooth decaying modes and stays lean.  Keep thirds
  // when M is too small for the weighted split to respect the floors.
  const int total = M + 2;
  int w1 = std::max(5, static_cast<int>(std::lround(total * 0.30)));
  int w2 = std::max(6, static_cast<int>(std::lround(total * 0.45)));
  int w3 = std::max(5, static_cast<int>(std::lround(total * 0.25)));
  int excess = w1 + w2 + w3 - total;
  while (excess > 0 && w2 > 6) { --w2; --excess; }
  while (excess > 0 && w1 > 5) { --w1; --excess; }
  while (excess > 0 && w3 > 5) { --w3; --excess; }
  while (excess < 0) { ++w2; ++excess; }
  if (excess == 0) {
    m1 = w1;
    m2 = w2;
    m3 = w3;
  }
  const double a = kCollarHalfWidth;
  std::vector<RadialElement> elems;
  elems.push_back(standard_element(1.0, 1.0 + a, m1));
  elems.push_back(standard_element(1.0 + a, 1.0 + 3.0 * a, m2));
  elems.push_back(standard_element(1.0 + 3.0 * a, R, m3));
  return assemble(std::move(elems), false, R);
}

}  // namespace hsc
