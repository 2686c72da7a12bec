#include "vpscale/metrics.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vpscale {

namespace {

void require_same_size(const ImagePlane& a, const ImagePlane& b, const char* who) {
  if (a.height() != b.height() || a.width() != b.width())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

void require_compatible(const RasterImage& a, const RasterImage& b, const char* who) {
  a.validate();
  b.validate();
  if (a.height() != b.height() || a.width() != b.width() ||
      a.color_channel_count() != b.color_channel_count())
    throw std::invalid_argument(std::string(who) + ": images differ in size or channel layout");
}

// Separable normalized Gaussian weights.
Eigen::VectorXd gaussian_window(int size, double sigma) {
  Eigen::VectorXd w(size);
  const double c = (size - 1) / 2.0;
  for (int i = 0; i < size; ++i) w(i) = std::exp(-((i - c) * (i - c)) / (2.0 * sigma * sigma));
  return w / w.sum();
}

// "valid" correlation with the outer product window w w^T.
Eigen::MatrixXd filter_valid(const Eigen::MatrixXd& x, const Eigen::VectorXd& w) {
  const Eigen::Index k = w.size();
  const Eigen::Index rows = x.rows() - k + 1, cols = x.cols() - k + 1;
  Eigen::MatrixXd tmp = Eigen::MatrixXd::Zero(rows, x.cols());
  for (Eigen::Index a = 0; a < k; ++a) tmp += w(a) * x.middleRows(a, rows);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  for (Eigen::Index b = 0; b < k; ++b) out += w(b) * tmp.middleCols(b, cols);
  return out;
}

double ssim_index(double mu_a, double mu_b, double var_a, double var_b, double cov, double c1, double c2) {
  return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
         ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
}

double ssim_global(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const SsimParams& p) {
  const double count = static_cast<double>(a.size());
  const double mu_a = a.mean(), mu_b = b.mean();
  const Eigen::ArrayXXd da = a.array() - mu_a;
  const Eigen::ArrayXXd db = b.array() - mu_b;
  const double var_a = (da * da).sum() / count;
  const double var_b = (db * db).sum() / count;
  const double cov = (da * db).sum() / count;
  return ssim_index(mu_a, mu_b, var_a, var_b, cov, p.c1, p.c2);
}

double ssim_windowed(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const SsimParams& p) {
  const auto w = gaussian_window(p.window_size, p.window_sigma);
  const Eigen::MatrixXd mu_a = filter_valid(a, w);
  const Eigen::MatrixXd mu_b = filter_valid(b, w);
  const Eigen::MatrixXd e_aa = filter_valid(a.cwiseProduct(a), w);
  const Eigen::MatrixXd e_bb = filter_valid(b.cwiseProduct(b), w);
  const Eigen::MatrixXd e_ab = filter_valid(a.cwiseProduct(b), w);
  double total = 0.0;
  for (Eigen::Index j = 0; j < mu_a.cols(); ++j)
    for (Eigen::Index i = 0; i < mu_a.rows(); ++i) {
      const double ma = mu_a(i, j), mb = mu_b(i, j);
      total += ssim_index(ma, mb, e_aa(i, j) - ma * ma, e_bb(i, j) - mb * mb, e_ab(i, j) - ma * mb, p.c1, p.c2);
    }
  return total / static_cast<double>(mu_a.size());
}

}  // namespace

LumaCoefficients LumaCoefficients::bt601_studio(int max_f) {
  LumaCoefficients c;
  c.a4 = 16.0 * (static_cast<double>(max_f) + 1.0) / 256.0;
  return c;
}

SsimParams SsimParams::for_range(int dynamic_range, SsimMode mode, bool unsquared_constants) {
  if (dynamic_range < 1) throw std::invalid_argument("SsimParams: dynamic range must be >= 1");
  SsimParams p;
  p.dynamic_range = dynamic_range;
  p.mode = mode;
  const double k1 = 0.01 * dynamic_range, k2 = 0.03 * dynamic_range;
  p.c1 = unsquared_constants ? k1 : k1 * k1;
  p.c2 = unsquared_constants ? k2 : k2 * k2;
  return p;
}

double mse(const ImagePlane& a, const ImagePlane& b) {
  require_same_size(a, b, "mse");
  return (a.data() - b.data()).squaredNorm() / static_cast<double>(a.data().size());
}

double mse_color(const RasterImage& a, const RasterImage& b) {
  require_compatible(a, b, "mse_color");
  const int count = a.color_channel_count();
  double total = 0.0;
  for (int c = 0; c < count; ++c) total += mse(a.channels[c], b.channels[c]);
  return total / count;
}

double psnr_from_mse(double mse_value, int max_f) {
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(static_cast<double>(max_f) / std::sqrt(mse_value));
}

double psnr_mean_channel(const RasterImage& a, const RasterImage& b, int max_f) {
  return psnr_from_mse(mse_color(a, b), max_f);
}

ImagePlane rgb_to_luma(const RasterImage& image, const LumaCoefficients& coeffs) {
  image.validate();
  if (image.channel_count() != 3) throw std::invalid_argument("rgb_to_luma: expected 3 channels");
  Eigen::MatrixXd y = coeffs.a1 * image.channels[0].data() + coeffs.a2 * image.channels[1].data() +
                      coeffs.a3 * image.channels[2].data();
  y.array() += coeffs.a4;
  return ImagePlane(std::move(y));
}

ImagePlane luma_plane(const RasterImage& image) {
  image.validate();
  if (image.channel_count() == 1) return image.channels.front();
  if (image.channel_count() == 4) {
    RasterImage rgb({image.channels[0], image.channels[1], image.channels[2]}, image.max_f);
    return rgb_to_luma(rgb, LumaCoefficients::bt601_studio(image.max_f));
  }
  return rgb_to_luma(image, LumaCoefficients::bt601_studio(image.max_f));
}

double mse_luma(const RasterImage& a, const RasterImage& b) {
  require_compatible(a, b, "mse_luma");
  return mse(luma_plane(a), luma_plane(b));
}

double psnr_luma(const RasterImage& a, const RasterImage& b, int max_f) {
  return psnr_from_mse(mse_luma(a, b), max_f);
}

double ssim_plane(const ImagePlane& a, const ImagePlane& b, const SsimParams& params) {
  require_same_size(a, b, "ssim");
  if (!(params.c1 > 0.0 && params.c2 > 0.0)) throw std::invalid_argument("ssim: c1 and c2 must be > 0");
  if (params.mode == SsimMode::Windowed) {
    if (params.window_size < 1 || params.window_size % 2 == 0 || !(params.window_sigma > 0.0))
      throw std::invalid_argument("ssim: window must have odd size and positive sigma");
    if (a.height() >= params.window_size && a.width() >= params.window_size)
      return ssim_windowed(a.data(), b.data(), params);
  }
  return ssim_global(a.data(), b.data(), params);
}

double ssim(const RasterImage& a, const RasterImage& b, const SsimParams& params) {
  require_compatible(a, b, "ssim");
  return ssim_plane(luma_plane(a), luma_plane(b), params);
}

QualityReport evaluate_quality(const RasterImage& output, const RasterImage& reference, const SsimParams& params) {
  QualityReport r;
  r.target_h = output.height();
  r.target_w = output.width();
  r.mse_mean_channel = mse_color(output, reference);
  r.psnr_mean_channel = psnr_from_mse(r.mse_mean_channel, reference.max_f);
  const ImagePlane ya = luma_plane(output), yb = luma_plane(reference);
  r.mse_luma = mse(ya, yb);
  r.psnr_luma = psnr_from_mse(r.mse_luma, reference.max_f);
  r.ssim = ssim_plane(ya, yb, params);
  return r;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, end);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string quality_csv_header() {
  return "image_id,source_h,source_w,target_h,target_w,theta,psnr_luma,psnr_mean,ssim,elapsed_s";
}

std::string quality_csv_row(const QualityReport& r, bool include_timing) {
  std::string row = csv_escape(r.image_id);
  for (int v : {r.source_h, r.source_w, r.target_h, r.target_w}) row += "," + std::to_string(v);
  for (double v : {r.theta_used, r.psnr_luma, r.psnr_mean_channel, r.ssim}) row += "," + format_real(v);
  row += "," + (include_timing ? format_real(r.elapsed) : std::string("0"));
  return row;
}

}  // namespace vpscale
