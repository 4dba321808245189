#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rlg/permutation.hpp"
#include "rlg/seriation.hpp"

namespace rlg {

/// r = max(1, round(n^alpha)), k = round(n^beta).
struct DkrGridPoint {
  double alpha = 0.0;
  double beta = 0.5;

  Index k(Index n) const;
  Index r(Index n) const;
  /// CSV column name, e.g. dkr_a0.25_b0.8.
  std::string column() const;
};

/// {0, 0.25, 0.5, 0.75} x {0.5, 0.75, 0.8, 0.95}; 0.95 stands in for a beta
/// just below one.
std::vector<DkrGridPoint> default_dkr_grid();

struct ExperimentConfig {
  std::vector<Index> n_list;
  double p = 0.5;
  Index trials = 1;
  std::uint64_t master_seed = 1;
  std::vector<DkrGridPoint> dkr_grid = default_dkr_grid();
  TiePolicy tie_policy = TiePolicy::ascending_index;
  SpectralOrder spectral_order = SpectralOrder::algebraic;
  std::filesystem::path output;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
  /// Wall-clock runtime_ms is the only non-deterministic column; it is
  /// written as 0 unless this is set.
  bool record_timing = false;
  /// Trial whose eigenvectors go to the plot-data file.
  Index plot_n = 0;
  Index plot_trial = 0;

  /// Throws std::invalid_argument on an empty n_list, odd, repeated or < 8
  /// sizes, trials < 1, p outside (0, 1] or exponents outside [0, 1].
  void validate() const;
};

/// Flat key=value text; '#' starts a comment. Keys: n_list (comma list), p,
/// trials, master_seed, dkr_grid (alpha:beta comma list), tie_policy
/// (ascending_index | descending_index), spectral_order (algebraic |
/// magnitude), output, threads, record_timing, plot_n, plot_trial.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

struct TrialRecord {
  Index n = 0;
  double p = 0.0;
  Index trial = 0;
  std::uint64_t seed = 0;
  double lambda2_hat = 0.0;
  /// ||x - x_hat|| after aligning x_hat to latent coordinates and sign.
  double eigvec_distance = 0.0;
  std::int64_t kendall_D = 0;
  std::int64_t footrule_F = 0;
  double tau_paper = 1.0;
  double tau_standard = 1.0;
  std::vector<std::int64_t> dkr;
  std::int64_t baseline_D = 0;
  /// Not written to the CSV.
  std::int64_t baseline_F = 0;
  double runtime_ms = 0.0;
  /// Non-empty when the solver failed; metrics are then NaN / zero.
  std::string error;

  bool ok() const noexcept { return error.empty(); }
};

struct TrialVectors {
  /// Model eigenvector, unit norm, decreasing first half.
  Eigen::VectorXd model;
  /// Recovered eigenvector in latent coordinates, sign-aligned to model.
  Eigen::VectorXd recovered;
};

/// Per-trial seed, a function of (master_seed, n, trial) only.
std::uint64_t trial_seed(std::uint64_t master_seed, Index n, Index trial);

/// One trial: sample, scramble, recover, align, measure.
TrialRecord run_trial(const ExperimentConfig& config, Index n, Index trial,
                      TrialVectors* vectors = nullptr);

/// All trials, sorted by (n, trial) regardless of scheduling.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// (log n, log statistic).
  std::vector<std::pair<double, double>> points;
};

/// Least squares on (log n, log statistic). Needs >= 3 points; throws
/// std::invalid_argument on a nonpositive statistic or n.
ScalingFit estimate_scaling_exponent(std::span<const std::pair<double, double>> points);

double median(std::vector<double> values);

/// Per-n medians of a record field over successful trials, ascending n.
std::vector<std::pair<double, double>>
median_by_n(std::span<const TrialRecord> records, double (*field)(const TrialRecord&));

std::string csv_header(std::span<const DkrGridPoint> grid);

/// Throws std::invalid_argument on an empty record list and std::runtime_error
/// (with the path) on I/O failure.
void emit_csv(std::ostream& out, std::span<const TrialRecord> records,
              std::span<const DkrGridPoint> grid);
void emit_csv(const std::filesystem::path& path, std::span<const TrialRecord> records,
              std::span<const DkrGridPoint> grid);

/// Tab-separated index, model component, recovered component (1-based index).
void emit_plot_data(std::ostream& out, const TrialVectors& vectors);
void emit_plot_data(const std::filesystem::path& path, const TrialVectors& vectors);

} // namespace rlg
