#include "vpscale/theta_search.hpp"

#include <chrono>
#include <stdexcept>

#include "vpscale/parallel.hpp"
#include "vpscale/resize.hpp"

namespace vpscale {

std::vector<double> theta_grid(bool include_zero) {
  std::vector<double> grid;
  if (include_zero) grid.push_back(0.0);
  for (int k = 1; k <= 19; ++k) grid.push_back(k / 20.0);
  return grid;
}

ThetaSweepResult supervised_resize(const RasterImage& input, const RasterImage& target,
                                   const SweepOptions& options, MatrixCache& cache) {
  input.validate();
  target.validate();
  if (target.height() < 1 || target.width() < 1)
    throw std::invalid_argument("supervised_resize: target must be non-empty");

  const auto thetas = theta_grid(options.include_zero);
  ThetaSweepResult result;
  result.candidates.resize(thetas.size());

  parallel_for(thetas.size(), options.jobs, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const ResizeSpec spec{target.height(), target.width(), thetas[i]};
    RasterImage out = resize_image_real(input, spec, cache);
    if (!options.unquantized_metrics) out = quantize_clamp(out);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ThetaCandidate& cand = result.candidates[i];
    cand.theta = thetas[i];
    cand.report = evaluate_quality(out, target, options.ssim);
    cand.report.source_h = input.height();
    cand.report.source_w = input.width();
    cand.report.theta_used = thetas[i];
    cand.report.elapsed = elapsed;
    cand.mse = options.select == SelectMetric::MseLuma ? cand.report.mse_luma : cand.report.mse_mean_channel;
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.candidates.size(); ++i)
    if (result.candidates[i].mse < result.candidates[best].mse) best = i;
  result.best_theta = result.candidates[best].theta;
  result.best_image = resize_image(input, ResizeSpec{target.height(), target.width(), result.best_theta}, cache);
  return result;
}

double aggregate_best_theta(const std::vector<ThetaSweepResult>& results) {
  if (results.empty()) throw std::invalid_argument("aggregate_best_theta: empty result list");
  double total = 0.0;
  for (const auto& r : results) total += r.best_theta;
  return total / static_cast<double>(results.size());
}

}  // namespace vpscale
