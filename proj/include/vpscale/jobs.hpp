#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpscale/metrics.hpp"
#include "vpscale/prefilter.hpp"
#include "vpscale/resize.hpp"
#include "vpscale/theta_search.hpp"

namespace vpscale {

/// Process exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitIo = 2, kExitConfig = 3 };

/// Invalid combination of options; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class JobMode { Up, Down, Size, Supervised, BasisDump };

struct PrefilterConfig {
  std::optional<FilterKind> kind;  // nullopt = no pre-filter
  FilterParams params;
};

struct MetricsConfig {
  SsimMode ssim_mode = SsimMode::Windowed;
  bool ssim_unsquared_constants = false;
  bool quantized = true;
  bool timing = true;  // false writes elapsed_s as 0 for byte-stable CSVs
};

struct BasisDumpConfig {
  int n = 5;
  std::vector<int> ms{0};
  std::vector<int> ks;  // empty = 1..n
  int samples = 201;
  bool include_lagrange = false;
  bool at_nodes = false;  // sample at the n Chebyshev nodes instead of a uniform grid
};

struct JobConfig {
  JobMode mode = JobMode::Up;
  std::optional<double> scale;
  std::optional<int> target_height;
  std::optional<int> target_width;
  double theta = 0.5;
  PrefilterConfig prefilter;
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<std::filesystem::path> target;     // supervised mode
  std::optional<std::filesystem::path> reference;  // metrics in unsupervised modes
  std::optional<std::filesystem::path> csv;
  MetricsConfig metrics;
  SelectMetric select = SelectMetric::MseMean;
  bool include_zero = false;
  int jobs = 1;
  BasisDumpConfig basis;

  /// Throws UsageError for inconsistent settings (e.g. both --scale and an
  /// explicit size, or neither).
  void validate() const;
};

/// Column-labelled samples of fundamental VP / Lagrange polynomials.
struct BasisTable {
  std::vector<std::string> columns;  // "x", then "phi_m<m>_k<k>"..., then "lagrange_k<k>"...
  std::vector<std::vector<double>> rows;
};

[[nodiscard]] BasisTable basis_dump(const BasisDumpConfig& config);
void write_csv(const BasisTable& table, std::ostream& out);

/// Runs a job, throwing on failure.
void execute_job(const JobConfig& config, std::ostream& log);

/// execute_job with failures mapped to exit codes: UsageError -> 1,
/// IoError -> 2, anything else -> 3. Messages go to `err`.
[[nodiscard]] int run_job(const JobConfig& config, std::ostream& log, std::ostream& err);

/// Header and rows of the supervised sweep dump.
[[nodiscard]] std::string sweep_csv_header();
[[nodiscard]] std::vector<std::string> sweep_csv_rows(const std::string& image_id, const ThetaSweepResult& result,
                                                      bool include_timing);

// ---- dataset harness --------------------------------------------------------

enum class InputGenerator { SelfVpi, SelfLci, Provided };
enum class ThetaPolicy { Fixed, Sweep };

struct HarnessConfig {
  std::filesystem::path dataset_dir;  // target images
  ScaleDirection direction = ScaleDirection::Down;
  std::vector<int> factors{2, 3, 4};
  InputGenerator generator = InputGenerator::SelfVpi;
  /// For InputGenerator::Provided: inputs are read from <provided_dir>/<s>/<file name>.
  std::filesystem::path provided_dir;
  ThetaPolicy theta_policy = ThetaPolicy::Fixed;
  double theta = 0.5;            // fixed policy
  double generator_theta = 0.5;  // self-vpi generator
  SelectMetric select = SelectMetric::MseMean;
  bool include_zero = false;
  MetricsConfig metrics;
  int jobs = 1;

  void validate() const;
};

struct HarnessRow {
  ScaleDirection direction = ScaleDirection::Down;
  int factor = 0;
  QualityReport report;
};

struct HarnessSummary {
  ScaleDirection direction = ScaleDirection::Down;
  int factor = 0;
  int images = 0;
  int skipped = 0;
  double mean_psnr_luma = 0.0;
  double mean_psnr_mean = 0.0;
  double mean_ssim = 0.0;
  double mean_theta = 0.0;  // mean best theta (sweep) or the fixed theta
};

struct HarnessResult {
  std::vector<HarnessRow> rows;  // sorted by (factor, file path)
  std::vector<HarnessSummary> summary;
  std::vector<std::string> warnings;
  int skipped_files = 0;
};

/// Throws IoError when the dataset directory is missing or holds no images.
[[nodiscard]] HarnessResult run_harness(const HarnessConfig& config);

[[nodiscard]] std::string harness_csv_header();
[[nodiscard]] std::string harness_csv_row(const HarnessRow& row, bool include_timing);
[[nodiscard]] std::string harness_summary_header();
[[nodiscard]] std::string harness_summary_row(const HarnessSummary& summary);

/// Writes rows to `csv` and the summary to `summary_csv`.
void write_harness_csv(const HarnessResult& result, const std::filesystem::path& csv,
                       const std::filesystem::path& summary_csv, bool include_timing);

}  // namespace vpscale
