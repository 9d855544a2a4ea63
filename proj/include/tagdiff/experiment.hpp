#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "tagdiff/metrics.hpp"
#include "tagdiff/record.hpp"
#include "tagdiff/splitter.hpp"

namespace tagdiff {

/// Ascending grid lo, lo + step, ..., hi. Points are snapped to 1e-9 so that
/// 0.15 prints as 0.15; hi is always included.
std::vector<double> lambda_grid(double lo, double hi, double step);

struct ExperimentConfig {
  std::vector<double> lambdas = lambda_grid(0.0, 1.0, 0.05);
  std::size_t runs = 50;
  double test_fraction = 0.05;
  std::vector<std::size_t> list_lengths = {10, 20, 50, 100};
  std::uint64_t master_seed = 0;
  /// Diversification pair sampling; exact unless more users than threshold.
  std::size_t pair_sampling_threshold = PairSampling{}.threshold;
  std::size_t pair_sampling_size = PairSampling{}.sample_size;
  /// 0 means one per hardware thread. Results never depend on it.
  unsigned workers = 0;
  /// After the grid, also evaluate a 0.01-step neighbourhood of the best
  /// grid point for AUC.
  bool fine_opt = false;

  /// Throws kConfig: grid must be ascending within [0, 1] and contain both
  /// endpoints; runs >= 1; lengths nonempty and positive.
  void validate() const;
};

/// Recall preset: pure item-tag, the even blend, and pure
/// user-item.
std::vector<double> recall_preset_lambdas();

/// Seed of run `run_index`; the split of that run uses it.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run_index);

/// Evaluates one split at every lambda and list length. Reports are ordered
/// lambda-major, length-minor. Per-user scoring is parallel; every reduction
/// runs in user order, so results are independent of `workers`.
std::vector<MetricsReport> evaluate_split(const SplitDataset& split,
                                          std::span<const double> lambdas,
                                          std::span<const std::size_t> lengths,
                                          const ExperimentConfig& config);

/// Splits with the run's derived seed and evaluates at one lambda; one
/// report per configured list length.
std::vector<MetricsReport> run_once(const RecordSet& records,
                                    const ExperimentConfig& config,
                                    double lambda, std::size_t run_index);

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single run
};

struct AggregateRow {
  double lambda = 0.0;
  std::size_t length = 0;
  MetricSummary auc, recall, diversification, novelty;
};

struct LengthOptimum {
  std::size_t length = 0;
  double recall_lambda = 0.0;           // argmax of mean recall
  double diversification_lambda = 0.0;  // argmax of mean diversification
  double novelty_lambda = 0.0;          // argmin of mean degree (most novel)
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<double> lambdas;  // evaluated points, ascending (grid + fine)
  /// One per (run, lambda, length), run-major then lambda then length.
  std::vector<MetricsReport> raw;
  /// One per (lambda, length), lambda-major.
  std::vector<AggregateRow> aggregate;
  /// Argmax of mean AUC, ties to the smaller lambda.
  double lambda_opt = 0.0;
  double best_auc = 0.0;
  std::vector<LengthOptimum> optima;
  /// Split digest per run; every lambda of a run used that split.
  std::vector<std::uint64_t> split_digests;

  const AggregateRow& at(double lambda, std::size_t length) const;
};

/// Full protocol: `runs` seeded splits, each shared by every lambda.
SweepResult sweep(const RecordSet& records, const ExperimentConfig& config);

/// Writes into `dir` (created if needed):
///   report.tsv        header, raw rows, then aggregate rows whose seed
///                     column reads `mean`
///   curve_<metric>_L<L>.tsv   `lambda<TAB>mean<TAB>std`, lambda to 4 decimals
///   optimum.tsv       lambda_opt per metric and length
void emit_report(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace tagdiff
