#include "vpscale/prefilter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vpscale {

namespace {

constexpr int kSupersample = 64;     // per-axis subsamples per tap for motion
constexpr int kDiskStrips = 512;     // integration strips per tap for disk

void normalize(Eigen::MatrixXd& taps) {
  const double total = taps.sum();
  if (!(total > 0.0)) throw std::invalid_argument("kernel has no positive weight");
  taps /= total;
}

void require_odd_size(int size, const char* who) {
  if (size < 1 || size % 2 == 0)
    throw std::invalid_argument(std::string(who) + ": size must be odd and >= 1");
}

Eigen::MatrixXd average_taps(int size) {
  require_odd_size(size, "average");
  return Eigen::MatrixXd::Constant(size, size, 1.0 / (static_cast<double>(size) * size));
}

Eigen::MatrixXd gaussian_taps(int size, double sigma) {
  require_odd_size(size, "gaussian");
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be > 0");
  const int half = size / 2;
  Eigen::MatrixXd taps(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const double y = i - half, x = j - half;
      taps(i, j) = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
    }
  normalize(taps);
  return taps;
}

// Area of the disk of radius r inside [x0,x1] x [y0,y1], midpoint rule in x
// with the exact chord length in y.
double disk_area(double r, double x0, double x1, double y0, double y1) {
  const double dx = (x1 - x0) / kDiskStrips;
  double area = 0.0;
  for (int s = 0; s < kDiskStrips; ++s) {
    const double u = x0 + (s + 0.5) * dx;
    const double h2 = r * r - u * u;
    if (h2 <= 0.0) continue;
    const double h = std::sqrt(h2);
    const double lo = std::max(-h, y0), hi = std::min(h, y1);
    if (hi > lo) area += (hi - lo) * dx;
  }
  return area;
}

Eigen::MatrixXd disk_taps(double radius) {
  if (!(radius >= 0.5)) throw std::invalid_argument("disk: radius must be >= 0.5");
  const int half = static_cast<int>(std::ceil(radius - 0.5));
  const int size = 2 * half + 1;
  Eigen::MatrixXd taps(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const double y = i - half, x = j - half;
      taps(i, j) = disk_area(radius, x - 0.5, x + 0.5, y - 0.5, y + 0.5);
    }
  normalize(taps);
  return taps;
}

// Unit-width bar of the given length through the origin, rasterized by
// supersampled coverage. Rows grow downward, so the direction vector is
// (cos a, -sin a) in (column, row) coordinates.
Eigen::MatrixXd motion_taps(double length, double angle_deg) {
  if (!(length >= 1.0)) throw std::invalid_argument("motion: length must be >= 1");
  if (!std::isfinite(angle_deg)) throw std::invalid_argument("motion: angle must be finite");
  const double a = angle_deg * std::numbers::pi / 180.0;
  const double ux = std::cos(a), uy = -std::sin(a);
  const double half_len = length / 2.0;
  const int half = static_cast<int>(std::ceil(half_len + 0.5));
  const int size = 2 * half + 1;
  Eigen::MatrixXd taps = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      int hits = 0;
      for (int si = 0; si < kSupersample; ++si) {
        const double y = (i - half) + (si + 0.5) / kSupersample - 0.5;
        for (int sj = 0; sj < kSupersample; ++sj) {
          const double x = (j - half) + (sj + 0.5) / kSupersample - 0.5;
          const double along = x * ux + y * uy;
          const double across = -x * uy + y * ux;
          if (std::abs(along) <= half_len && std::abs(across) <= 0.5) ++hits;
        }
      }
      taps(i, j) = hits;
    }
  // trim empty border rings symmetrically so the kernel stays centered
  int top = 0;
  while (top < half && taps.row(top).isZero() && taps.row(size - 1 - top).isZero()) ++top;
  int left = 0;
  while (left < half && taps.col(left).isZero() && taps.col(size - 1 - left).isZero()) ++left;
  Eigen::MatrixXd trimmed = taps.block(top, left, size - 2 * top, size - 2 * left);
  normalize(trimmed);
  return trimmed;
}

}  // namespace

FilterKernel make_kernel(FilterKind kind, const FilterParams& params) {
  FilterKernel kernel;
  kernel.kind = kind;
  kernel.params = params;
  switch (kind) {
    case FilterKind::Average: kernel.taps = average_taps(params.size); break;
    case FilterKind::Gaussian: kernel.taps = gaussian_taps(params.size, params.sigma); break;
    case FilterKind::Disk: kernel.taps = disk_taps(params.radius); break;
    case FilterKind::Motion: kernel.taps = motion_taps(params.length, params.angle_deg); break;
  }
  return kernel;
}

FilterKernel identity_kernel() {
  FilterParams params;
  params.size = 1;
  return make_kernel(FilterKind::Average, params);
}

std::optional<FilterKind> parse_filter_kind(std::string_view name) {
  if (name == "average") return FilterKind::Average;
  if (name == "disk") return FilterKind::Disk;
  if (name == "gaussian") return FilterKind::Gaussian;
  if (name == "motion") return FilterKind::Motion;
  return std::nullopt;
}

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::Average: return "average";
    case FilterKind::Disk: return "disk";
    case FilterKind::Gaussian: return "gaussian";
    case FilterKind::Motion: return "motion";
  }
  return "unknown";
}

ImagePlane convolve_plane(const ImagePlane& plane, const FilterKernel& kernel) {
  const auto& taps = kernel.taps;
  if (taps.rows() % 2 == 0 || taps.cols() % 2 == 0)
    throw std::invalid_argument("convolve: kernel dimensions must be odd");
  const int kh = static_cast<int>(taps.rows()), kw = static_cast<int>(taps.cols());
  const int ch = kh / 2, cw = kw / 2;
  const int h = plane.height(), w = plane.width();

  Eigen::MatrixXd padded(h + 2 * ch, w + 2 * cw);
  for (int j = 0; j < w + 2 * cw; ++j) {
    const int sj = std::clamp(j - cw, 0, w - 1);
    for (int i = 0; i < h + 2 * ch; ++i) padded(i, j) = plane(std::clamp(i - ch, 0, h - 1), sj);
  }

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(h, w);
  for (int a = 0; a < kh; ++a)
    for (int b = 0; b < kw; ++b) {
      const double tap = taps(a, b);
      if (tap != 0.0) out += tap * padded.block(a, b, h, w);
    }
  return ImagePlane(std::move(out));
}

RasterImage convolve(const RasterImage& image, const FilterKernel& kernel) {
  image.validate();
  RasterImage out;
  out.max_f = image.max_f;
  out.channels.reserve(image.channels.size());
  for (const auto& plane : image.channels)
    out.channels.push_back(quantize_clamp(convolve_plane(plane, kernel), image.max_f));
  return out;
}

RasterImage filtered_downscale(const RasterImage& image, const ResizeSpec& spec, const FilterKernel& kernel,
                               MatrixCache& cache) {
  image.validate();
  spec.validate();
  if (spec.target_height >= image.height() || spec.target_width >= image.width())
    throw std::invalid_argument("filtered_downscale: target must be smaller than the source in both dimensions");
  return resize_image(convolve(image, kernel), spec, cache);
}

}  // namespace vpscale
