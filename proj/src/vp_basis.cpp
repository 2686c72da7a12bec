#include "vpscale/vp_basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpscale {

namespace {

void check_nm(const char* who, int n, int m) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  if (m < 0 || m > n)
    throw std::invalid_argument(std::string(who) + ": m must lie in [0, n], got m=" +
                                std::to_string(m) + " n=" + std::to_string(n));
}

double node_angle(int n, int k) {
  return static_cast<double>(2 * k - 1) * std::numbers::pi / (2.0 * static_cast<double>(n));
}

// cos(i * pi / (2 * len)) for i in [0, 4 * len). Values are computed in the
// first quadrant and reflected, so cos(a) and cos(pi - a) are exact negatives.
std::vector<double> quarter_wave_table(int len) {
  const std::int64_t period = 4 * static_cast<std::int64_t>(len);
  std::vector<double> table(static_cast<std::size_t>(period));
  const double step = std::numbers::pi / (2.0 * static_cast<double>(len));
  for (std::int64_t i = 0; i < period; ++i) {
    const std::int64_t q = i / len;  // quadrant
    const std::int64_t rem = i % len;
    double v = 0.0;
    switch (q) {
      case 0: v = std::cos(static_cast<double>(rem) * step); break;
      case 1: v = rem == 0 ? 0.0 : -std::cos(static_cast<double>(len - rem) * step); break;
      case 2: v = -std::cos(static_cast<double>(rem) * step); break;
      default: v = rem == 0 ? 0.0 : std::cos(static_cast<double>(len - rem) * step); break;
    }
    table[static_cast<std::size_t>(i)] = v;
  }
  return table;
}

}  // namespace

int filter_degree(double theta, int n) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must lie in [0, 1]");
  if (n < 1) throw std::invalid_argument("filter_degree: n must be >= 1");
  const double scaled = theta * static_cast<double>(n);
  int m = static_cast<int>(std::floor(scaled + 1e-9 * std::max(1.0, scaled)));
  return std::min(m, n);
}

VpParams::VpParams(int n_, int m_, double theta_) : n(n_), m(m_), theta(theta_) {
  check_nm("VpParams", n, m);
}

VpParams VpParams::from_theta(int n, double theta) {
  return VpParams(n, filter_degree(theta, n), theta);
}

double eval_q(int n, int m, int r, double t) {
  check_nm("eval_q", n, m);
  if (r < 0 || r >= n)
    throw std::invalid_argument("eval_q: r must lie in [0, n-1], got " + std::to_string(r));
  if (r <= n - m) return std::cos(r * t);
  const double two_m = 2.0 * m;
  return (n + m - r) / two_m * std::cos(r * t) + (n - m - r) / two_m * std::cos((2 * n - r) * t);
}

double eval_phi(int n, int m, int k, double t) {
  check_nm("eval_phi", n, m);
  if (k < 1 || k > n)
    throw std::invalid_argument("eval_phi: k must lie in [1, n], got " + std::to_string(k));
  const double tk = node_angle(n, k);
  double sum = 0.5;
  for (int r = 1; r < n; ++r) sum += std::cos(r * tk) * eval_q(n, m, r, t);
  return 2.0 / n * sum;
}

double eval_lagrange(int n, int k, double t) {
  if (n < 1) throw std::invalid_argument("eval_lagrange: n must be >= 1");
  if (k < 1 || k > n)
    throw std::invalid_argument("eval_lagrange: k must lie in [1, n], got " + std::to_string(k));
  const double tk = node_angle(n, k);
  double sum = 0.5;
  for (int r = 1; r < n; ++r) sum += std::cos(r * tk) * std::cos(r * t);
  return 2.0 / n * sum;
}

ScalingMatrix build_scaling_matrix(int source_n, int m, int target_n) {
  check_nm("build_scaling_matrix", source_n, m);
  if (target_n < 1) throw std::invalid_argument("build_scaling_matrix: target_n must be >= 1");

  const int n = source_n;
  const int big_n = target_n;
  const std::int64_t src_period = 4 * static_cast<std::int64_t>(n);
  const std::int64_t dst_period = 4 * static_cast<std::int64_t>(big_n);
  const auto src_cos = quarter_wave_table(n);
  const auto dst_cos = quarter_wave_table(big_n);

  // cos(r * t_k^n) = cos(r (2k-1) pi / (2n)); reduce r(2k-1) mod 4n.
  Eigen::MatrixXd a(n, n);
  for (int k = 0; k < n; ++k) {
    a(0, k) = 0.5;
    const std::int64_t odd = 2 * k + 1;
    for (int r = 1; r < n; ++r)
      a(r, k) = src_cos[static_cast<std::size_t>((r * odd) % src_period)];
  }

  Eigen::MatrixXd c(n, big_n);
  const double two_m = 2.0 * m;
  for (int j = 0; j < big_n; ++j) {
    const std::int64_t odd = 2 * j + 1;
    for (int r = 0; r < n; ++r) {
      const double base = dst_cos[static_cast<std::size_t>((r * odd) % dst_period)];
      if (r <= n - m) {
        c(r, j) = base;
      } else {
        const double mirror =
            dst_cos[static_cast<std::size_t>(((2 * static_cast<std::int64_t>(n) - r) * odd) % dst_period)];
        c(r, j) = (n + m - r) / two_m * base + (n - m - r) / two_m * mirror;
      }
    }
  }

  ScalingMatrix out;
  out.source_n = source_n;
  out.target_n = target_n;
  out.m = m;
  out.entries.noalias() = a.transpose() * c;
  out.entries *= 2.0 / n;
  return out;
}

}  // namespace vpscale
