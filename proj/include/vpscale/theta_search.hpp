#pragma once

#include <vector>

#include "vpscale/image.hpp"
#include "vpscale/matrix_cache.hpp"
#include "vpscale/metrics.hpp"

namespace vpscale {

enum class SelectMetric { MseMean, MseLuma };

struct SweepOptions {
  SelectMetric select = SelectMetric::MseMean;
  bool include_zero = false;
  /// Compute candidate metrics on real-valued outputs instead of quantized ones.
  bool unquantized_metrics = false;
  SsimParams ssim = SsimParams::for_range(255);
  int jobs = 1;
};

struct ThetaCandidate {
  double theta = 0.0;
  double mse = 0.0;  // the selection metric
  QualityReport report;
};

struct ThetaSweepResult {
  std::vector<ThetaCandidate> candidates;  // ascending theta
  double best_theta = 0.0;
  RasterImage best_image;  // quantized
};

/// 0.05, 0.10, ..., 0.95 (19 values), with 0 prepended on request.
[[nodiscard]] std::vector<double> theta_grid(bool include_zero = false);

/// Resizes `input` to the size of `target` for every theta on the grid and
/// keeps the one with the smallest selection MSE; ties go to the smaller theta.
[[nodiscard]] ThetaSweepResult supervised_resize(const RasterImage& input, const RasterImage& target,
                                                 const SweepOptions& options = {},
                                                 MatrixCache& cache = default_matrix_cache());

/// Arithmetic mean of best_theta. Throws std::invalid_argument on an empty list.
[[nodiscard]] double aggregate_best_theta(const std::vector<ThetaSweepResult>& results);

}  // namespace vpscale
