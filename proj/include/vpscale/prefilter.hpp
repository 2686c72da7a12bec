#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "vpscale/image.hpp"
#include "vpscale/matrix_cache.hpp"
#include "vpscale/resize.hpp"

namespace vpscale {

enum class FilterKind { Average, Disk, Gaussian, Motion };

/// Kind-specific parameters; defaults follow the usual filter-factory
/// conventions (average 3x3, disk radius 5, gaussian 3x3 sigma 0.5,
/// motion length 9 at 0 degrees).
struct FilterParams {
  int size = 3;             // average, gaussian
  double sigma = 0.5;       // gaussian
  double radius = 5.0;      // disk
  double length = 9.0;      // motion
  double angle_deg = 0.0;   // motion, counter-clockwise from +x
};

/// Normalized, centered correlation kernel (odd height and width).
struct FilterKernel {
  FilterKind kind = FilterKind::Average;
  FilterParams params;
  Eigen::MatrixXd taps;
};

[[nodiscard]] FilterKernel make_kernel(FilterKind kind, const FilterParams& params = {});

/// Single 1.0 tap.
[[nodiscard]] FilterKernel identity_kernel();

[[nodiscard]] std::optional<FilterKind> parse_filter_kind(std::string_view name);
[[nodiscard]] std::string_view to_string(FilterKind kind);

/// 2-D correlation with replicate (edge-clamp) padding; same size, unclamped.
[[nodiscard]] ImagePlane convolve_plane(const ImagePlane& plane, const FilterKernel& kernel);

/// convolve_plane on every channel, then quantize_clamp.
[[nodiscard]] RasterImage convolve(const RasterImage& image, const FilterKernel& kernel);

/// convolve followed by resize_image. Throws std::invalid_argument unless the
/// target is smaller than the input in both dimensions.
[[nodiscard]] RasterImage filtered_downscale(const RasterImage& image, const ResizeSpec& spec,
                                             const FilterKernel& kernel,
                                             MatrixCache& cache = default_matrix_cache());

}  // namespace vpscale
