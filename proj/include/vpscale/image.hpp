#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vpscale {

/// One channel of real-valued intensities. Row index i <-> height <-> x axis,
/// column index j <-> width <-> y axis. Values are in raw intensity units and
/// are not clamped.
class ImagePlane {
 public:
  ImagePlane() = default;
  ImagePlane(int height, int width, double fill = 0.0);
  explicit ImagePlane(Eigen::MatrixXd data);

  [[nodiscard]] int height() const { return static_cast<int>(data_.rows()); }
  [[nodiscard]] int width() const { return static_cast<int>(data_.cols()); }

  double& operator()(int i, int j) { return data_(i, j); }
  double operator()(int i, int j) const { return data_(i, j); }

  [[nodiscard]] const Eigen::MatrixXd& data() const { return data_; }
  [[nodiscard]] Eigen::MatrixXd& data() { return data_; }

  friend bool operator==(const ImagePlane& a, const ImagePlane& b) {
    return a.data_.rows() == b.data_.rows() && a.data_.cols() == b.data_.cols() &&
           a.data_ == b.data_;
  }

 private:
  Eigen::MatrixXd data_;
};

/// Multi-channel image: 1 (gray), 3 (RGB) or 4 (RGBA) planes of equal size.
/// The quantized form holds integers in [0, max_f] in every sample.
struct RasterImage {
  std::vector<ImagePlane> channels;
  int max_f = 255;

  RasterImage() = default;
  RasterImage(std::vector<ImagePlane> planes, int max_value);

  [[nodiscard]] int height() const { return channels.empty() ? 0 : channels.front().height(); }
  [[nodiscard]] int width() const { return channels.empty() ? 0 : channels.front().width(); }
  [[nodiscard]] int channel_count() const { return static_cast<int>(channels.size()); }
  /// Channels that carry color, i.e. all but a trailing alpha plane.
  [[nodiscard]] int color_channel_count() const { return channel_count() == 4 ? 3 : channel_count(); }

  /// Throws std::invalid_argument on an empty image, a channel count other
  /// than 1/3/4, mismatched plane sizes or max_f < 1.
  void validate() const;
  /// True when every sample is an integer in [0, max_f].
  [[nodiscard]] bool is_quantized() const;

  friend bool operator==(const RasterImage& a, const RasterImage& b) {
    return a.max_f == b.max_f && a.channels == b.channels;
  }
};

}  // namespace vpscale
