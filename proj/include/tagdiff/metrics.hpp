#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tagdiff/diffusion.hpp"
#include "tagdiff/graph.hpp"
#include "tagdiff/recommender.hpp"
#include "tagdiff/splitter.hpp"

namespace tagdiff {

/// One evaluation point. `diversification` is NaN when fewer than two users
/// were evaluated.
struct MetricsReport {
  double lambda = 0.0;
  std::size_t length = 0;
  double auc = 0.0;
  double recall = 0.0;
  double diversification = std::numeric_limits<double>::quiet_NaN();
  double novelty = 0.0;
  std::size_t evaluated_users = 0;
  std::size_t skipped_users = 0;
  std::uint64_t seed = 0;

  // Diagnostics, not part of the report row.
  std::size_t short_lists = 0;
  std::size_t diversification_pairs = 0;
  double diversification_stderr = 0.0;  // nonzero only when pair-sampled
};

/// `lambda<TAB>L<TAB>auc<TAB>recall<TAB>diversification<TAB>novelty<TAB>
/// evaluated_users<TAB>skipped_users<TAB>seed`.
std::string format_report_row(const MetricsReport& report);
inline constexpr const char* kReportHeader =
    "lambda\tL\tauc\trecall\tdiversification\tnovelty\tevaluated_users\t"
    "skipped_users\tseed";

/// Mann-Whitney AUC of one user: the fraction of (test, other) pairs where
/// the test item scores higher, ties counting one half. `implicit_zeros`
/// adds that many other candidates with score 0 without listing them.
/// Returns nullopt when there are no other candidates. Throws kContract when
/// `test_scores` is empty.
std::optional<double> auc_user(std::span<const double> test_scores,
                               std::span<const double> other_scores,
                               std::size_t implicit_zeros = 0);

struct AucSummary {
  double auc = 0.0;
  std::size_t evaluated_users = 0;
  std::size_t skipped_users = 0;
  /// Sample standard deviation of per-user AUC over sqrt(evaluated_users).
  double standard_error = 0.0;
};

/// Unweighted mean over the users with a value; nullopt entries are counted
/// as skipped. Throws kData when no user has a value.
AucSummary summarize_auc(std::span<const std::optional<double>> per_user);

/// Fills `scores` (one slot per training item) for `user`.
using ScoreFunction = std::function<void(Index user, std::span<double> scores)>;

/// System AUC over users holding retained test items, for any scorer.
AucSummary auc(const SplitDataset& split, const ScoreFunction& score,
               unsigned workers = 1);
/// System AUC of the blended diffusion.
AucSummary auc(const SplitDataset& split, BlendParameter lambda,
               unsigned workers = 1);

/// Mean over lists of |top-L ∩ test| / |test|, users without test items
/// excluded. Lists longer than L are truncated to their first L items.
/// Throws kData when no list belongs to a user with test items.
double recall(std::span<const RecommendationList> lists,
              std::span<const std::vector<Index>> test_sets, std::size_t length);

struct PairSampling {
  /// Sample pairs only when there are more lists than this.
  std::size_t threshold = std::numeric_limits<std::size_t>::max();
  std::size_t sample_size = 200000;
  std::uint64_t seed = 0;
};

struct DiversityEstimate {
  double value = 0.0;
  std::size_t pairs = 0;         // pairs averaged (all, or the sample size)
  double standard_error = 0.0;   // zero when exact
  bool sampled = false;
};

/// Mean over unordered list pairs of 1 - |overlap| / L. The exact path
/// counts how many lists hold each item, so it is linear in total list
/// length. Returns nullopt for fewer than two lists.
std::optional<DiversityEstimate> diversification(
    std::span<const RecommendationList> lists, std::size_t length,
    const PairSampling& sampling = {});

/// Mean training degree of recommended items, normalised by lists * L
/// (lower is more novel). Throws kContract for an empty list set.
double novelty(std::span<const RecommendationList> lists,
               const TripartiteGraph& training, std::size_t length);

}  // namespace tagdiff
