#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "vpscale/image.hpp"
#include "vpscale/matrix_cache.hpp"
#include "vpscale/vp_basis.hpp"

namespace vpscale {

enum class ScaleDirection { Up, Down };

/// Target size plus the filter parameter theta; m = floor(theta * n) per axis.
struct ResizeSpec {
  int target_height = 1;
  int target_width = 1;
  double theta = 0.5;

  void validate() const;
};

/// Raised by downscale_odd_fast when the odd-factor gather does not apply.
class FastPathNotApplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// V1^T * plane * V2, unclamped.
[[nodiscard]] ImagePlane resize_plane(const ImagePlane& plane, const ScalingMatrix& v1,
                                      const ScalingMatrix& v2);

/// Returns s when height = s * target_height and width = s * target_width
/// for the same odd s (s = 1 included), otherwise nullopt.
[[nodiscard]] std::optional<int> odd_downscale_factor(int height, int width, int target_height,
                                                      int target_width);

/// Zero-based source indices i(h) - 1 with i(h) = (s(2h-1)+1)/2, h = 1..n/s.
[[nodiscard]] std::vector<int> odd_gather_indices(int n, int s);

/// Pure index gather at i(h) on both axes. Throws FastPathNotApplicable for
/// even s or dimensions not divisible by s.
[[nodiscard]] RasterImage downscale_odd_fast(const RasterImage& image, int s);

/// Resize without quantization. The odd-factor gather is used whenever it
/// applies; otherwise every channel goes through resize_plane with matrices
/// drawn from `cache`.
[[nodiscard]] RasterImage resize_image_real(const RasterImage& image, const ResizeSpec& spec,
                                            MatrixCache& cache = default_matrix_cache());

/// resize_image_real followed by quantize_clamp on every channel.
[[nodiscard]] RasterImage resize_image(const RasterImage& image, const ResizeSpec& spec,
                                       MatrixCache& cache = default_matrix_cache());

/// Round half away from zero, then clamp to [0, max_f].
[[nodiscard]] ImagePlane quantize_clamp(const ImagePlane& plane, int max_f);
[[nodiscard]] RasterImage quantize_clamp(const RasterImage& image);

/// Output length for scaling n by `factor` (>= 1) in the given direction.
[[nodiscard]] int scale_to_size(int n, double factor, ScaleDirection direction);

}  // namespace vpscale
