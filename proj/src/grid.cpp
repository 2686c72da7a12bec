#include "vpscale/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vpscale {

std::vector<double> chebyshev_angles(std::size_t n) {
  if (n == 0) throw std::invalid_argument("chebyshev_angles: n must be >= 1");
  std::vector<double> angles(n);
  const double step = std::numbers::pi / (2.0 * static_cast<double>(n));
  // closed form per index, never accumulated
  for (std::size_t k = 0; k < n; ++k) angles[k] = static_cast<double>(2 * k + 1) * step;
  return angles;
}

ChebyshevGrid chebyshev_grid(std::size_t n) {
  ChebyshevGrid grid;
  grid.n = n;
  grid.angles = chebyshev_angles(n);
  grid.nodes.resize(n);
  for (std::size_t k = 0; k < n; ++k) grid.nodes[k] = std::cos(grid.angles[k]);
  // cos((2k-1)pi/(2n)) and cos((2(n+1-k)-1)pi/(2n)) are exact negatives;
  // mirror so the symmetry holds bit-for-bit rather than to rounding
  for (std::size_t k = 0; k < n / 2; ++k) grid.nodes[n - 1 - k] = -grid.nodes[k];
  if (n % 2 == 1) grid.nodes[n / 2] = 0.0;
  return grid;
}

}  // namespace vpscale
