#include "vpscale/resize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vpscale {

void ResizeSpec::validate() const {
  if (target_height < 1 || target_width < 1)
    throw std::invalid_argument("ResizeSpec: target dimensions must be >= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("ResizeSpec: theta must lie in [0, 1]");
}

ImagePlane resize_plane(const ImagePlane& plane, const ScalingMatrix& v1, const ScalingMatrix& v2) {
  if (v1.source_n != plane.height() || v2.source_n != plane.width())
    throw std::invalid_argument("resize_plane: matrix source sizes do not match the plane (" +
                                std::to_string(plane.height()) + "x" + std::to_string(plane.width()) + ")");
  const auto& p = plane.data();
  const double n1 = plane.height(), n2 = plane.width();
  const double big1 = v1.target_n, big2 = v2.target_n;
  // pick the cheaper association of V1^T P V2
  const double left_first = big1 * n1 * n2 + big1 * n2 * big2;
  const double right_first = n1 * n2 * big2 + big1 * n1 * big2;
  Eigen::MatrixXd out;
  if (left_first <= right_first) {
    Eigen::MatrixXd tmp;
    tmp.noalias() = v1.entries.transpose() * p;
    out.noalias() = tmp * v2.entries;
  } else {
    Eigen::MatrixXd tmp;
    tmp.noalias() = p * v2.entries;
    out.noalias() = v1.entries.transpose() * tmp;
  }
  return ImagePlane(std::move(out));
}

std::optional<int> odd_downscale_factor(int height, int width, int target_height, int target_width) {
  if (target_height < 1 || target_width < 1) return std::nullopt;
  if (height % target_height != 0 || width % target_width != 0) return std::nullopt;
  const int s = height / target_height;
  if (s != width / target_width || s % 2 == 0) return std::nullopt;
  return s;
}

std::vector<int> odd_gather_indices(int n, int s) {
  if (s < 1 || s % 2 == 0) throw FastPathNotApplicable("odd gather: factor must be odd");
  if (n < 1 || n % s != 0) throw FastPathNotApplicable("odd gather: size not divisible by factor");
  std::vector<int> idx(static_cast<std::size_t>(n / s));
  for (int h = 1; h <= n / s; ++h) idx[static_cast<std::size_t>(h - 1)] = (s * (2 * h - 1) + 1) / 2 - 1;
  return idx;
}

RasterImage downscale_odd_fast(const RasterImage& image, int s) {
  image.validate();
  if (s < 1 || s % 2 == 0)
    throw FastPathNotApplicable("downscale_odd_fast: factor " + std::to_string(s) + " is not odd");
  if (image.height() % s != 0 || image.width() % s != 0)
    throw FastPathNotApplicable("downscale_odd_fast: image size not divisible by " + std::to_string(s));
  const auto rows = odd_gather_indices(image.height(), s);
  const auto cols = odd_gather_indices(image.width(), s);
  RasterImage out;
  out.max_f = image.max_f;
  for (const auto& plane : image.channels) {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows.size(); ++i) d(i, j) = plane(rows[i], cols[j]);
    out.channels.emplace_back(std::move(d));
  }
  return out;
}

RasterImage resize_image_real(const RasterImage& image, const ResizeSpec& spec, MatrixCache& cache) {
  image.validate();
  spec.validate();
  if (auto s = odd_downscale_factor(image.height(), image.width(), spec.target_height, spec.target_width))
    return downscale_odd_fast(image, *s);

  const int n1 = image.height(), n2 = image.width();
  const auto v1 = cache.get(n1, filter_degree(spec.theta, n1), spec.target_height);
  const auto v2 = cache.get(n2, filter_degree(spec.theta, n2), spec.target_width);
  RasterImage out;
  out.max_f = image.max_f;
  out.channels.reserve(image.channels.size());
  for (const auto& plane : image.channels) out.channels.push_back(resize_plane(plane, *v1, *v2));
  return out;
}

RasterImage resize_image(const RasterImage& image, const ResizeSpec& spec, MatrixCache& cache) {
  return quantize_clamp(resize_image_real(image, spec, cache));
}

ImagePlane quantize_clamp(const ImagePlane& plane, int max_f) {
  if (max_f < 1) throw std::invalid_argument("quantize_clamp: max_f must be >= 1");
  const double hi = max_f;
  // std::round rounds halfway cases away from zero
  Eigen::MatrixXd d = plane.data().unaryExpr([hi](double v) { return std::clamp(std::round(v), 0.0, hi); });
  return ImagePlane(std::move(d));
}

RasterImage quantize_clamp(const RasterImage& image) {
  RasterImage out;
  out.max_f = image.max_f;
  out.channels.reserve(image.channels.size());
  for (const auto& plane : image.channels) out.channels.push_back(quantize_clamp(plane, image.max_f));
  return out;
}

int scale_to_size(int n, double factor, ScaleDirection direction) {
  if (n < 1) throw std::invalid_argument("scale_to_size: n must be >= 1");
  if (!(factor >= 1.0) || !std::isfinite(factor))
    throw std::invalid_argument("scale_to_size: factor must be >= 1");
  if (direction == ScaleDirection::Up) {
    const double rounded = std::round(factor);
    if (rounded == factor) return n * static_cast<int>(rounded);
    return static_cast<int>(std::round(n * factor));
  }
  return std::max(1, static_cast<int>(std::floor(n / factor)));
}

}  // namespace vpscale
