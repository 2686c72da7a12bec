#pragma once

#include <Eigen/Dense>

namespace vpscale {

/// Filter degree m = floor(theta * n) for theta in [0, 1].
///
/// A relative guard of 1e-9 absorbs representation error in theta, so that
/// e.g. theta = 0.15 with n = 20 yields m = 3 and not 2.
[[nodiscard]] int filter_degree(double theta, int n);

/// (n, m, theta) triple governing one axis of the filter.
struct VpParams {
  int n = 1;
  int m = 0;
  double theta = 0.0;

  /// Throws std::invalid_argument unless n >= 1 and 0 <= m <= n.
  VpParams(int n, int m, double theta = 0.0);

  /// m = floor(theta * n); theta must lie in [0, 1].
  [[nodiscard]] static VpParams from_theta(int n, double theta);
};

/// Orthogonal VP polynomial q_{m,r}^n at angle t (x = cos t).
///
/// Equals cos(rt) for r <= n - m, and the blend
///   ((n+m-r) cos(rt) + (n-m-r) cos((2n-r)t)) / (2m)
/// for n - m < r < n.
[[nodiscard]] double eval_q(int n, int m, int r, double t);

/// Fundamental VP polynomial Phi_{m,k}^n at angle t, k in 1..n.
[[nodiscard]] double eval_phi(int n, int m, int k, double t);

/// Fundamental Lagrange polynomial l_{n,k} at angle t, k in 1..n.
[[nodiscard]] double eval_lagrange(int n, int k, double t);

/// Rectangular matrix V with V(i, j) = Phi_{m,i+1}^{source_n} evaluated at the
/// (j+1)-th target node, i.e. the operator mapping source samples to target
/// samples along one image axis via V^T.
struct ScalingMatrix {
  int source_n = 0;
  int target_n = 0;
  int m = 0;
  Eigen::MatrixXd entries;
};

/// Built as (2/n) A^T C with A(r,k) = cos(r t_k^n) (row r = 0 halved) and
/// C(r,j) = q_{m,r}^n(t_j^N). Cosines come from exact integer-reduced tables.
[[nodiscard]] ScalingMatrix build_scaling_matrix(int source_n, int m, int target_n);

}  // namespace vpscale
