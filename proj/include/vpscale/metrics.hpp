#pragma once

#include <string>

#include "vpscale/image.hpp"

namespace vpscale {

/// Y = a1 R + a2 G + a3 B + a4. Studio-range BT.601 for 8-bit data; the
/// offset scales with bit depth ((max_f + 1) / 256).
struct LumaCoefficients {
  double a1 = 0.256788;
  double a2 = 0.504129;
  double a3 = 0.097906;
  double a4 = 16.0;

  [[nodiscard]] static LumaCoefficients bt601_studio(int max_f = 255);
};

enum class SsimMode { Global, Windowed };

struct SsimParams {
  double c1 = 0.0;
  double c2 = 0.0;
  int dynamic_range = 255;
  SsimMode mode = SsimMode::Windowed;
  int window_size = 11;
  double window_sigma = 1.5;

  /// c1 = (0.01 L)^2, c2 = (0.03 L)^2; with `unsquared_constants` the literal
  /// c1 = 0.01 L, c2 = 0.03 L reading is used instead.
  [[nodiscard]] static SsimParams for_range(int dynamic_range, SsimMode mode = SsimMode::Windowed,
                                            bool unsquared_constants = false);
};

struct QualityReport {
  std::string image_id;
  int source_h = 0;
  int source_w = 0;
  int target_h = 0;
  int target_w = 0;
  double mse_mean_channel = 0.0;
  double psnr_mean_channel = 0.0;
  double mse_luma = 0.0;
  double psnr_luma = 0.0;
  double ssim = 0.0;
  double theta_used = 0.0;
  double elapsed = 0.0;  // seconds
};

[[nodiscard]] double mse(const ImagePlane& a, const ImagePlane& b);

/// Mean of per-channel MSE over the color channels (a trailing alpha plane
/// is ignored; a gray image has one color channel).
[[nodiscard]] double mse_color(const RasterImage& a, const RasterImage& b);

/// 20 log10(max_f / sqrt(mse)); +inf when mse == 0.
[[nodiscard]] double psnr_from_mse(double mse_value, int max_f);

[[nodiscard]] double psnr_mean_channel(const RasterImage& a, const RasterImage& b, int max_f);

/// Requires exactly 3 channels.
[[nodiscard]] ImagePlane rgb_to_luma(const RasterImage& image,
                                     const LumaCoefficients& coeffs = LumaCoefficients::bt601_studio());

/// Luma of any supported image: RGB(A) through rgb_to_luma with coefficients
/// for image.max_f, gray images as-is.
[[nodiscard]] ImagePlane luma_plane(const RasterImage& image);

[[nodiscard]] double mse_luma(const RasterImage& a, const RasterImage& b);
[[nodiscard]] double psnr_luma(const RasterImage& a, const RasterImage& b, int max_f);

/// SSIM of two planes. Windowed mode averages the local index over every
/// fully contained Gaussian window; planes smaller than the window fall back
/// to the global formula.
[[nodiscard]] double ssim_plane(const ImagePlane& a, const ImagePlane& b, const SsimParams& params);

/// SSIM of the luma planes.
[[nodiscard]] double ssim(const RasterImage& a, const RasterImage& b, const SsimParams& params);

/// Fills the metric fields of a report comparing `output` to `reference`.
[[nodiscard]] QualityReport evaluate_quality(const RasterImage& output, const RasterImage& reference,
                                             const SsimParams& params);

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite.
[[nodiscard]] std::string format_real(double value);

/// Quotes a CSV field when it contains a comma, quote or newline.
[[nodiscard]] std::string csv_escape(const std::string& field);

/// image_id,source_h,source_w,target_h,target_w,theta,psnr_luma,psnr_mean,ssim,elapsed_s
[[nodiscard]] std::string quality_csv_header();
[[nodiscard]] std::string quality_csv_row(const QualityReport& report, bool include_timing = true);

}  // namespace vpscale
