#pragma once

#include <cstddef>
#include <vector>

namespace vpscale {

/// First-kind Chebyshev sampling system of size n.
///
/// angles[k-1] = (2k-1)pi/(2n) and nodes[k-1] = cos(angles[k-1]) for k = 1..n.
/// Nodes are kept in natural index order (decreasing x), so image row 1 maps
/// to node 1.
struct ChebyshevGrid {
  std::size_t n = 0;
  std::vector<double> angles;
  std::vector<double> nodes;
};

/// Angles (2k-1)pi/(2n), k = 1..n. Throws std::invalid_argument for n = 0.
[[nodiscard]] std::vector<double> chebyshev_angles(std::size_t n);

/// Throws std::invalid_argument for n = 0.
[[nodiscard]] ChebyshevGrid chebyshev_grid(std::size_t n);

}  // namespace vpscale
