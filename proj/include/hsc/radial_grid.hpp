#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hsc {

// One Chebyshev-Lobatto spectral element on [r_lo, r_hi], nodes ascending.
// The innermost disk element uses the positive half of a symmetric grid
// through the origin; radial derivatives there couple values at theta and
// theta + pi, split into a same-angle part (D1, D2) and an opposite-angle
// part (D1m, D2m).
struct RadialElement {
  int g0 = 0;              // global index of the lowest node
  Eigen::VectorXd nodes;   // ascending radii
  Eigen::MatrixXd D1, D2;
  Eigen::MatrixXd D1m, D2m;
  bool parity = false;
  int count() const { return static_cast<int>(nodes.size()); }
};

// Three elements with breaks at the cutoff transition radii, so every
// element sees smooth coefficient fields. Shared edge nodes carry a single
// global index.
struct RadialLayout {
  bool disk = false;
  double r_outer = 1.0;
  std::vector<double> r;
  std::vector<RadialElement> elems;
  std::vector<int> interface_nodes;  // global indices with C1 matching rows
  int count() const { return static_cast<int>(r.size()); }
};

// M = total number of radial nodes (M >= 10).
RadialLayout make_disk_layout(int M);
RadialLayout make_annulus_layout(int M, double R);

// Classic Chebyshev-Lobatto nodes and differentiation matrix on [-1, 1],
// n+1 points descending from 1 to -1.
void chebyshev_lobatto(int n, Eigen::VectorXd& x, Eigen::MatrixXd& D);

}  // namespace hsc
