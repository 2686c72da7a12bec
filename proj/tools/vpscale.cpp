// vpscale: command-line front end for VP-filtered Chebyshev image resizing.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "vpscale/image_io.hpp"
#include "vpscale/jobs.hpp"
#include "vpscale/vp_basis.hpp"

namespace {

using namespace vpscale;

struct PrefilterFlags {
  std::string kind = "none";
  FilterParams params;
};

struct MetricFlags {
  std::string ssim_mode = "windowed";
  bool unsquared_constants = false;
  bool no_quantize = false;
  bool no_timing = false;
};

void add_prefilter_flags(CLI::App* cmd, PrefilterFlags& flags) {
  cmd->add_option("--prefilter", flags.kind, "Anti-alias pre-filter")
      ->check(CLI::IsMember({"none", "average", "disk", "gaussian", "motion"}));
  cmd->add_option("--prefilter-size", flags.params.size, "Kernel size (average, gaussian)");
  cmd->add_option("--prefilter-sigma", flags.params.sigma, "Gaussian sigma");
  cmd->add_option("--prefilter-radius", flags.params.radius, "Disk radius");
  cmd->add_option("--prefilter-len", flags.params.length, "Motion length");
  cmd->add_option("--prefilter-angle", flags.params.angle_deg, "Motion angle in degrees");
}

void add_metric_flags(CLI::App* cmd, MetricFlags& flags) {
  cmd->add_option("--ssim-mode", flags.ssim_mode, "SSIM formulation")->check(CLI::IsMember({"windowed", "global"}));
  cmd->add_flag("--ssim-paper-constants,--ssim-unsquared-constants", flags.unsquared_constants, "Use c1 = 0.01 L, c2 = 0.03 L (unsquared)");
  cmd->add_flag("--no-quantize-metrics", flags.no_quantize, "Measure the real-valued output");
  cmd->add_flag("--no-timing", flags.no_timing, "Write elapsed_s as 0 for reproducible CSVs");
}

MetricsConfig to_metrics(const MetricFlags& flags) {
  MetricsConfig m;
  m.ssim_mode = flags.ssim_mode == "global" ? SsimMode::Global : SsimMode::Windowed;
  m.ssim_unsquared_constants = flags.unsquared_constants;
  m.quantized = !flags.no_quantize;
  m.timing = !flags.no_timing;
  return m;
}

SelectMetric to_select(const std::string& name) {
  return name == "mse-luma" ? SelectMetric::MseLuma : SelectMetric::MseMean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image resizing by de la Vallee Poussin filtered Chebyshev interpolation"};
  app.require_subcommand(1);

  JobConfig job;
  PrefilterFlags prefilter;
  MetricFlags metric_flags;
  std::string input, output, target, reference, csv;
  double scale = 0.0;
  int width = 0, height = 0;
  std::string select = "mse-mean";

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "Input image (PNG, PPM, PGM)")->required();
    cmd->add_option("output", output, "Output image (PNG, PPM, PGM)")->required();
    cmd->add_option("--csv", csv, "Write a CSV report");
    cmd->add_option("--jobs", job.jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_metric_flags(cmd, metric_flags);
  };

  std::map<CLI::App*, JobMode> modes;
  auto* up = app.add_subcommand("up", "Upscale by a factor");
  auto* down = app.add_subcommand("down", "Downscale by a factor");
  auto* size = app.add_subcommand("size", "Resize to an explicit size");
  modes[up] = JobMode::Up;
  modes[down] = JobMode::Down;
  modes[size] = JobMode::Size;
  for (auto* cmd : {up, down, size}) {
    add_io(cmd);
    cmd->add_option("--theta", job.theta, "Filter parameter in [0, 1]; 0 selects Lagrange interpolation")
        ->capture_default_str();
    cmd->add_option("--reference", reference, "Reference image for the CSV quality report");
  }
  for (auto* cmd : {up, down}) cmd->add_option("--scale", scale, "Scale factor >= 1")->required();
  size->add_option("--width", width, "Target width")->required();
  size->add_option("--height", height, "Target height")->required();
  add_prefilter_flags(down, prefilter);
  add_prefilter_flags(size, prefilter);

  auto* supervised = app.add_subcommand("supervised", "Pick theta by minimum MSE against a target image");
  modes[supervised] = JobMode::Supervised;
  add_io(supervised);
  supervised->add_option("--target", target, "Target image defining the output size")->required();
  supervised->add_option("--select-metric", select, "Selection metric")
      ->check(CLI::IsMember({"mse-mean", "mse-luma"}));
  supervised->add_flag("--include-zero", job.include_zero, "Add theta = 0 to the sweep");

  auto* basis = app.add_subcommand("basis-dump", "Sample fundamental VP / Lagrange polynomials to CSV");
  modes[basis] = JobMode::BasisDump;
  std::vector<int> basis_ms;
  std::vector<double> basis_thetas;
  basis->add_option("--n", job.basis.n, "Number of nodes")->required();
  basis->add_option("--m", basis_ms, "Filter degrees m (comma separated)")->delimiter(',');
  basis->add_option("--theta", basis_thetas, "Filter parameters theta, m = floor(theta n)")->delimiter(',');
  basis->add_option("--k", job.basis.ks, "Basis indices (default: all)")->delimiter(',');
  basis->add_option("--samples", job.basis.samples, "Uniform samples on [-1, 1]")->capture_default_str();
  basis->add_flag("--lagrange", job.basis.include_lagrange, "Add Lagrange columns");
  basis->add_flag("--at-nodes", job.basis.at_nodes, "Sample at the Chebyshev nodes");
  basis->add_option("--csv", csv, "Output file (default: stdout)");

  HarnessConfig harness;
  std::string direction = "down", generator = "self-vpi", policy = "fixed", harness_csv, summary_csv, inputs_dir;
  MetricFlags harness_metrics;
  auto* harness_cmd = app.add_subcommand("harness", "Evaluate a dataset of target images");
  harness_cmd->add_option("dataset", harness.dataset_dir, "Directory of target images")->required();
  harness_cmd->add_option("--direction", direction)->check(CLI::IsMember({"up", "down"}))->capture_default_str();
  harness_cmd->add_option("--factors", harness.factors, "Scale factors")->delimiter(',');
  harness_cmd->add_option("--generator", generator)
      ->check(CLI::IsMember({"self-vpi", "self-lci", "provided"}))
      ->capture_default_str();
  harness_cmd->add_option("--inputs-dir", inputs_dir, "Provided inputs, laid out as <dir>/<factor>/<file>");
  harness_cmd->add_option("--theta-policy", policy)->check(CLI::IsMember({"fixed", "sweep"}))->capture_default_str();
  harness_cmd->add_option("--theta", harness.theta, "Theta for the fixed policy")->capture_default_str();
  harness_cmd->add_option("--generator-theta", harness.generator_theta)->capture_default_str();
  harness_cmd->add_option("--select-metric", select)->check(CLI::IsMember({"mse-mean", "mse-luma"}));
  harness_cmd->add_flag("--include-zero", harness.include_zero);
  harness_cmd->add_option("--csv", harness_csv, "Per-image rows")->required();
  harness_cmd->add_option("--summary", summary_csv, "Summary rows (default: <csv stem>.summary.csv)");
  harness_cmd->add_option("--jobs", harness.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_metric_flags(harness_cmd, harness_metrics);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (harness_cmd->parsed()) {
    try {
      harness.direction = direction == "up" ? ScaleDirection::Up : ScaleDirection::Down;
      harness.generator = generator == "self-lci"   ? InputGenerator::SelfLci
                          : generator == "provided" ? InputGenerator::Provided
                                                    : InputGenerator::SelfVpi;
      harness.provided_dir = inputs_dir;
      harness.theta_policy = policy == "sweep" ? ThetaPolicy::Sweep : ThetaPolicy::Fixed;
      harness.select = to_select(select);
      harness.metrics = to_metrics(harness_metrics);
      const auto result = run_harness(harness);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      const std::filesystem::path csv_path = harness_csv;
      const std::filesystem::path summary_path =
          summary_csv.empty() ? std::filesystem::path(csv_path).replace_extension(".summary.csv")
                              : std::filesystem::path(summary_csv);
      write_harness_csv(result, csv_path, summary_path, harness.metrics.timing);
      std::cout << harness_summary_header() << '\n';
      for (const auto& s : result.summary) std::cout << harness_summary_row(s) << '\n';
      return kExitOk;
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const IoError& e) {
      std::cerr << "I/O error: " << e.what() << '\n';
      return kExitIo;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfig;
    }
  }

  for (const auto& [cmd, mode] : modes)
    if (cmd->parsed()) job.mode = mode;

  job.input = input;
  job.output = output;
  if (!csv.empty()) job.csv = csv;
  if (!target.empty()) job.target = target;
  if (!reference.empty()) job.reference = reference;
  if (job.mode == JobMode::Up || job.mode == JobMode::Down) job.scale = scale;
  if (job.mode == JobMode::Size) {
    job.target_width = width;
    job.target_height = height;
  }
  if (prefilter.kind != "none") {
    job.prefilter.kind = parse_filter_kind(prefilter.kind);
    job.prefilter.params = prefilter.params;
  }
  job.metrics = to_metrics(metric_flags);
  job.select = to_select(select);

  if (job.mode == JobMode::BasisDump) {
    try {
      job.basis.ms = basis_ms;
      for (double th : basis_thetas) job.basis.ms.push_back(filter_degree(th, job.basis.n));
      if (job.basis.ms.empty()) job.basis.ms.push_back(0);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfig;
    }
  }

  return run_job(job, std::cout, std::cerr);
}
