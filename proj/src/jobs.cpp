#include "vpscale/jobs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>

#include "vpscale/grid.hpp"
#include "vpscale/image_io.hpp"
#include "vpscale/parallel.hpp"
#include "vpscale/vp_basis.hpp"

namespace vpscale {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_theta(double theta, const char* what) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

SsimParams ssim_params_for(const MetricsConfig& metrics, int max_f) {
  return SsimParams::for_range(max_f, metrics.ssim_mode, metrics.ssim_unsquared_constants);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  return out;
}

const char* direction_name(ScaleDirection d) { return d == ScaleDirection::Up ? "up" : "down"; }

}  // namespace

// ---- configuration ------------------------------------------------------------

void JobConfig::validate() const {
  if (mode == JobMode::BasisDump) {
    if (basis.n < 1) throw std::invalid_argument("basis-dump: n must be >= 1");
    if (basis.samples < 2 && !basis.at_nodes) throw std::invalid_argument("basis-dump: need at least 2 samples");
    if (basis.ms.empty()) throw UsageError("basis-dump: give at least one m or theta");
    return;
  }
  if (input.empty() || output.empty()) throw UsageError("input and output paths are required");
  if (jobs < 1) throw UsageError("--jobs must be >= 1");
  require_theta(theta, "--theta");
  const bool has_size = target_height.has_value() || target_width.has_value();
  switch (mode) {
    case JobMode::Up:
    case JobMode::Down:
      if (!scale) throw UsageError("--scale is required");
      if (has_size) throw UsageError("--scale and --width/--height are mutually exclusive");
      if (!(*scale >= 1.0)) throw std::invalid_argument("--scale must be >= 1 (the subcommand sets the direction)");
      break;
    case JobMode::Size:
      if (scale) throw UsageError("--scale and --width/--height are mutually exclusive");
      if (!target_height || !target_width) throw UsageError("--width and --height are both required");
      if (*target_height < 1 || *target_width < 1) throw std::invalid_argument("target size must be >= 1");
      break;
    case JobMode::Supervised:
      if (!target) throw UsageError("supervised mode needs --target");
      if (scale || has_size) throw UsageError("supervised mode takes its size from --target");
      break;
    case JobMode::BasisDump: break;
  }
  if (prefilter.kind && mode == JobMode::Up) throw UsageError("--prefilter applies to downscaling only");
  if (prefilter.kind && mode == JobMode::Supervised) throw UsageError("--prefilter is not available in supervised mode");
}

void HarnessConfig::validate() const {
  if (dataset_dir.empty()) throw UsageError("harness: dataset directory is required");
  if (factors.empty()) throw UsageError("harness: at least one factor is required");
  for (int s : factors)
    if (s < 2) throw std::invalid_argument("harness: factors must be >= 2");
  if (generator == InputGenerator::Provided && provided_dir.empty())
    throw UsageError("harness: provided inputs need --inputs-dir");
  if (jobs < 1) throw UsageError("--jobs must be >= 1");
  require_theta(theta, "--theta");
  require_theta(generator_theta, "--generator-theta");
}

// ---- basis dump ---------------------------------------------------------------

BasisTable basis_dump(const BasisDumpConfig& config) {
  const int n = config.n;
  if (n < 1) throw std::invalid_argument("basis_dump: n must be >= 1");
  std::vector<int> ks = config.ks;
  if (ks.empty())
    for (int k = 1; k <= n; ++k) ks.push_back(k);
  for (int k : ks)
    if (k < 1 || k > n) throw std::invalid_argument("basis_dump: k out of range");
  for (int m : config.ms)
    if (m < 0 || m > n) throw std::invalid_argument("basis_dump: m out of range");

  std::vector<double> xs;
  if (config.at_nodes) {
    xs = chebyshev_grid(static_cast<std::size_t>(n)).nodes;
  } else {
    if (config.samples < 2) throw std::invalid_argument("basis_dump: need at least 2 samples");
    for (int i = 0; i < config.samples; ++i) xs.push_back(-1.0 + 2.0 * i / (config.samples - 1));
  }

  BasisTable table;
  table.columns.push_back("x");
  for (int m : config.ms)
    for (int k : ks) table.columns.push_back("phi_m" + std::to_string(m) + "_k" + std::to_string(k));
  if (config.include_lagrange)
    for (int k : ks) table.columns.push_back("lagrange_k" + std::to_string(k));

  // node abscissae map back to their exact angles; other x go through acos
  const auto angles = chebyshev_angles(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double t = config.at_nodes ? angles[i] : std::acos(std::clamp(x, -1.0, 1.0));
    std::vector<double> row{x};
    for (int m : config.ms)
      for (int k : ks) row.push_back(eval_phi(n, m, k, t));
    if (config.include_lagrange)
      for (int k : ks) row.push_back(eval_lagrange(n, k, t));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(const BasisTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_real(row[c]);
    out << '\n';
  }
}

// ---- single jobs ----------------------------------------------------------------

std::string sweep_csv_header() { return "kind,image_id,theta,mse_mean,mse_luma,psnr_luma,psnr_mean,ssim,elapsed_s"; }

std::vector<std::string> sweep_csv_rows(const std::string& image_id, const ThetaSweepResult& result,
                                        bool include_timing) {
  std::vector<std::string> rows;
  auto emit = [&](const char* kind, const ThetaCandidate& c) {
    const auto& r = c.report;
    std::string row = std::string(kind) + "," + csv_escape(image_id);
    for (double v : {c.theta, r.mse_mean_channel, r.mse_luma, r.psnr_luma, r.psnr_mean_channel, r.ssim})
      row += "," + format_real(v);
    row += "," + (include_timing ? format_real(r.elapsed) : std::string("0"));
    rows.push_back(std::move(row));
  };
  for (const auto& c : result.candidates) emit("candidate", c);
  for (const auto& c : result.candidates)
    if (c.theta == result.best_theta) {
      emit("best", c);
      break;
    }
  return rows;
}

namespace {

void run_resize_job(const JobConfig& config, std::ostream& log) {
  const RasterImage input = load_image(config.input);
  ResizeSpec spec;
  spec.theta = config.theta;
  switch (config.mode) {
    case JobMode::Up:
      spec.target_height = scale_to_size(input.height(), *config.scale, ScaleDirection::Up);
      spec.target_width = scale_to_size(input.width(), *config.scale, ScaleDirection::Up);
      break;
    case JobMode::Down:
      spec.target_height = scale_to_size(input.height(), *config.scale, ScaleDirection::Down);
      spec.target_width = scale_to_size(input.width(), *config.scale, ScaleDirection::Down);
      break;
    default:
      spec.target_height = *config.target_height;
      spec.target_width = *config.target_width;
      break;
  }

  const auto start = Clock::now();
  RasterImage real;
  if (config.prefilter.kind) {
    const auto kernel = make_kernel(*config.prefilter.kind, config.prefilter.params);
    if (spec.target_height >= input.height() || spec.target_width >= input.width())
      throw std::invalid_argument("--prefilter requires a downscale in both dimensions");
    real = resize_image_real(convolve(input, kernel), spec);
  } else {
    real = resize_image_real(input, spec);
  }
  const RasterImage output = quantize_clamp(real);
  const double elapsed = seconds_since(start);
  save_image(output, config.output);
  log << config.input.string() << " " << input.height() << "x" << input.width() << " -> " << output.height() << "x"
      << output.width() << " theta=" << format_real(spec.theta) << " (" << format_real(elapsed) << " s)\n";

  if (!config.csv) return;
  QualityReport report;
  if (config.reference) {
    const RasterImage reference = load_image(*config.reference);
    const RasterImage& measured = config.metrics.quantized ? output : real;
    report = evaluate_quality(measured, reference, ssim_params_for(config.metrics, reference.max_f));
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.mse_mean_channel = report.psnr_mean_channel = report.mse_luma = report.psnr_luma = report.ssim = nan;
  }
  report.image_id = config.input.filename().string();
  report.source_h = input.height();
  report.source_w = input.width();
  report.target_h = output.height();
  report.target_w = output.width();
  report.theta_used = spec.theta;
  report.elapsed = elapsed;
  auto out = open_output(*config.csv);
  out << quality_csv_header() << '\n' << quality_csv_row(report, config.metrics.timing) << '\n';
}

void run_supervised_job(const JobConfig& config, std::ostream& log) {
  const RasterImage input = load_image(config.input);
  const RasterImage target = load_image(*config.target);
  SweepOptions options;
  options.select = config.select;
  options.include_zero = config.include_zero;
  options.unquantized_metrics = !config.metrics.quantized;
  options.ssim = ssim_params_for(config.metrics, target.max_f);
  options.jobs = config.jobs;
  const auto result = supervised_resize(input, target, options);
  save_image(result.best_image, config.output);
  log << config.input.string() << " supervised: best theta=" << format_real(result.best_theta) << " over "
      << result.candidates.size() << " candidates\n";
  if (config.csv) {
    auto out = open_output(*config.csv);
    out << sweep_csv_header() << '\n';
    for (const auto& row : sweep_csv_rows(config.input.filename().string(), result, config.metrics.timing))
      out << row << '\n';
  }
}

}  // namespace

void execute_job(const JobConfig& config, std::ostream& log) {
  config.validate();
  switch (config.mode) {
    case JobMode::BasisDump:
      if (config.csv) {
        auto out = open_output(*config.csv);
        write_csv(basis_dump(config.basis), out);
      } else {
        write_csv(basis_dump(config.basis), log);
      }
      return;
    case JobMode::Supervised: run_supervised_job(config, log); return;
    default: run_resize_job(config, log); return;
  }
}

int run_job(const JobConfig& config, std::ostream& log, std::ostream& err) {
  try {
    execute_job(config, log);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

// ---- harness ----------------------------------------------------------------------

namespace {

std::vector<std::filesystem::path> list_dataset(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && is_supported_image_path(entry.path())) files.push_back(entry.path());
  if (ec) throw IoError(dir.string() + ": " + ec.message());
  if (files.empty()) throw IoError(dir.string() + ": no PNG/PPM/PGM images found");
  std::sort(files.begin(), files.end());
  return files;
}

struct FactorOutcome {
  std::optional<HarnessRow> row;
  std::optional<ThetaSweepResult> sweep;  // kept only for its best_theta
  std::string warning;
};

FactorOutcome evaluate_factor(const HarnessConfig& config, const std::filesystem::path& file,
                              const RasterImage& target, int s) {
  FactorOutcome outcome;
  const bool down = config.direction == ScaleDirection::Down;
  // input size: s*N to test downscaling, floor(N/s) to test upscaling
  const int in_h = down ? s * target.height() : target.height() / s;
  const int in_w = down ? s * target.width() : target.width() / s;
  if (in_h < 1 || in_w < 1) {
    outcome.warning = file.string() + ": too small for factor " + std::to_string(s) + ", skipped";
    return outcome;
  }

  RasterImage input;
  if (config.generator == InputGenerator::Provided) {
    const auto path = config.provided_dir / std::to_string(s) / file.filename();
    try {
      input = load_image(path);
    } catch (const std::exception& e) {
      outcome.warning = std::string(e.what()) + ", skipped";
      return outcome;
    }
  } else {
    const double gen_theta = config.generator == InputGenerator::SelfLci ? 0.0 : config.generator_theta;
    input = resize_image(target, ResizeSpec{in_h, in_w, gen_theta});
  }

  const SsimParams ssim = ssim_params_for(config.metrics, target.max_f);
  HarnessRow row;
  row.direction = config.direction;
  row.factor = s;
  const auto start = Clock::now();
  if (config.theta_policy == ThetaPolicy::Sweep) {
    SweepOptions options;
    options.select = config.select;
    options.include_zero = config.include_zero;
    options.unquantized_metrics = !config.metrics.quantized;
    options.ssim = ssim;
    auto sweep = supervised_resize(input, target, options);
    const double elapsed = seconds_since(start);
    for (const auto& c : sweep.candidates)
      if (c.theta == sweep.best_theta) row.report = c.report;
    row.report.elapsed = elapsed;
    outcome.sweep = std::move(sweep);
  } else {
    const ResizeSpec spec{target.height(), target.width(), config.theta};
    const RasterImage real = resize_image_real(input, spec);
    const RasterImage output = quantize_clamp(real);
    const double elapsed = seconds_since(start);
    row.report = evaluate_quality(config.metrics.quantized ? output : real, target, ssim);
    row.report.theta_used = config.theta;
    row.report.elapsed = elapsed;
  }
  row.report.image_id = file.filename().string();
  row.report.source_h = input.height();
  row.report.source_w = input.width();
  row.report.target_h = target.height();
  row.report.target_w = target.width();
  outcome.row = std::move(row);
  if (outcome.sweep) outcome.sweep->best_image = RasterImage();  // not needed past this point
  return outcome;
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

}  // namespace

HarnessResult run_harness(const HarnessConfig& config) {
  config.validate();
  const auto files = list_dataset(config.dataset_dir);
  const std::size_t nf = config.factors.size();

  // outcomes[file][factor]
  std::vector<std::vector<FactorOutcome>> outcomes(files.size(), std::vector<FactorOutcome>(nf));
  std::vector<std::string> load_errors(files.size());

  parallel_for(files.size(), config.jobs, [&](std::size_t fi) {
    RasterImage target;
    try {
      target = load_image(files[fi]);
    } catch (const std::exception& e) {
      load_errors[fi] = std::string(e.what()) + ", skipped";
      return;
    }
    for (std::size_t si = 0; si < nf; ++si)
      outcomes[fi][si] = evaluate_factor(config, files[fi], target, config.factors[si]);
  });

  HarnessResult result;
  for (std::size_t fi = 0; fi < files.size(); ++fi)
    if (!load_errors[fi].empty()) {
      result.warnings.push_back(load_errors[fi]);
      ++result.skipped_files;
    }

  for (std::size_t si = 0; si < nf; ++si) {
    HarnessSummary summary;
    summary.direction = config.direction;
    summary.factor = config.factors[si];
    summary.skipped = result.skipped_files;
    std::vector<double> psnr_y, psnr_m, ssim_v, thetas;
    std::vector<ThetaSweepResult> sweeps;
    for (std::size_t fi = 0; fi < files.size(); ++fi) {
      if (!load_errors[fi].empty()) continue;
      auto& outcome = outcomes[fi][si];
      if (!outcome.row) {
        result.warnings.push_back(outcome.warning);
        ++summary.skipped;
        continue;
      }
      const auto& r = outcome.row->report;
      psnr_y.push_back(r.psnr_luma);
      psnr_m.push_back(r.psnr_mean_channel);
      ssim_v.push_back(r.ssim);
      thetas.push_back(r.theta_used);
      if (outcome.sweep) sweeps.push_back(std::move(*outcome.sweep));
      result.rows.push_back(std::move(*outcome.row));
    }
    summary.images = static_cast<int>(psnr_y.size());
    summary.mean_psnr_luma = mean_of(psnr_y);
    summary.mean_psnr_mean = mean_of(psnr_m);
    summary.mean_ssim = mean_of(ssim_v);
    summary.mean_theta = sweeps.empty() ? mean_of(thetas) : aggregate_best_theta(sweeps);
    result.summary.push_back(summary);
  }
  return result;
}

std::string harness_csv_header() { return "direction,factor," + quality_csv_header(); }

std::string harness_csv_row(const HarnessRow& row, bool include_timing) {
  return std::string(direction_name(row.direction)) + "," + std::to_string(row.factor) + "," +
         quality_csv_row(row.report, include_timing);
}

std::string harness_summary_header() {
  return "direction,factor,images,skipped,mean_psnr_luma,mean_psnr_mean,mean_ssim,mean_theta";
}

std::string harness_summary_row(const HarnessSummary& s) {
  return std::string(direction_name(s.direction)) + "," + std::to_string(s.factor) + "," + std::to_string(s.images) +
         "," + std::to_string(s.skipped) + "," + format_real(s.mean_psnr_luma) + "," + format_real(s.mean_psnr_mean) +
         "," + format_real(s.mean_ssim) + "," + format_real(s.mean_theta);
}

void write_harness_csv(const HarnessResult& result, const std::filesystem::path& csv,
                       const std::filesystem::path& summary_csv, bool include_timing) {
  {
    auto out = open_output(csv);
    out << harness_csv_header() << '\n';
    for (const auto& row : result.rows) out << harness_csv_row(row, include_timing) << '\n';
  }
  auto out = open_output(summary_csv);
  out << harness_summary_header() << '\n';
  for (const auto& s : result.summary) out << harness_summary_row(s) << '\n';
}

}  // namespace vpscale
