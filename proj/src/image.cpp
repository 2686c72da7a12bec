#include "vpscale/image.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace vpscale {

ImagePlane::ImagePlane(int height, int width, double fill) {
  if (height < 1 || width < 1) throw std::invalid_argument("ImagePlane: dimensions must be >= 1");
  data_ = Eigen::MatrixXd::Constant(height, width, fill);
}

ImagePlane::ImagePlane(Eigen::MatrixXd data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1)
    throw std::invalid_argument("ImagePlane: dimensions must be >= 1");
}

RasterImage::RasterImage(std::vector<ImagePlane> planes, int max_value)
    : channels(std::move(planes)), max_f(max_value) {
  validate();
}

void RasterImage::validate() const {
  if (max_f < 1) throw std::invalid_argument("RasterImage: max_f must be >= 1");
  const auto count = channels.size();
  if (count != 1 && count != 3 && count != 4)
    throw std::invalid_argument("RasterImage: expected 1, 3 or 4 channels");
  for (const auto& plane : channels) {
    if (plane.height() < 1 || plane.width() < 1)
      throw std::invalid_argument("RasterImage: empty channel");
    if (plane.height() != height() || plane.width() != width())
      throw std::invalid_argument("RasterImage: channels differ in size");
  }
}

bool RasterImage::is_quantized() const {
  for (const auto& plane : channels) {
    const auto& d = plane.data();
    for (Eigen::Index j = 0; j < d.cols(); ++j)
      for (Eigen::Index i = 0; i < d.rows(); ++i) {
        const double v = d(i, j);
        if (v < 0.0 || v > max_f || v != std::floor(v)) return false;
      }
  }
  return true;
}

}  // namespace vpscale
