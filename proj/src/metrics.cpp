#include "tagdiff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tagdiff/error.hpp"
#include "tagdiff/format.hpp"
#include "tagdiff/parallel.hpp"
#include "tagdiff/random.hpp"

namespace tagdiff {

std::string format_report_row(const MetricsReport& r) {
  auto metric = [](double v) { return std::isnan(v) ? std::string("NA") : format_shortest(v); };
  std::string row;
  row += format_shortest(r.lambda) + '\t';
  row += std::to_string(r.length) + '\t';
  row += metric(r.auc) + '\t';
  row += metric(r.recall) + '\t';
  row += metric(r.diversification) + '\t';
  row += metric(r.novelty) + '\t';
  row += std::to_string(r.evaluated_users) + '\t';
  row += std::to_string(r.skipped_users) + '\t';
  row += std::to_string(r.seed);
  return row;
}

std::optional<double> auc_user(std::span<const double> test_scores,
                               std::span<const double> other_scores,
                               std::size_t implicit_zeros) {
  if (test_scores.empty())
    fail(ErrorKind::kContract, "AUC needs at least one test item");
  const std::size_t others = other_scores.size() + implicit_zeros;
  if (others == 0) return std::nullopt;

  std::vector<double> sorted(other_scores.begin(), other_scores.end());
  std::sort(sorted.begin(), sorted.end());
  // Twice the Mann-Whitney U, kept integral so the result is exact.
  std::uint64_t twice_u = 0;
  for (double h : test_scores) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), h);
    const auto hi = std::upper_bound(lo, sorted.end(), h);
    std::uint64_t below = static_cast<std::uint64_t>(lo - sorted.begin());
    std::uint64_t tied = static_cast<std::uint64_t>(hi - lo);
    if (h > 0.0) below += implicit_zeros;
    if (h == 0.0) tied += implicit_zeros;
    twice_u += 2 * below + tied;
  }
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(test_scores.size()) * static_cast<double>(others));
}

AucSummary summarize_auc(std::span<const std::optional<double>> per_user) {
  AucSummary s;
  double sum = 0.0;
  for (const auto& v : per_user) {
    if (!v) {
      ++s.skipped_users;
      continue;
    }
    ++s.evaluated_users;
    sum += *v;
  }
  if (s.evaluated_users == 0)
    fail(ErrorKind::kData, "no user has a defined AUC");
  s.auc = sum / static_cast<double>(s.evaluated_users);
  if (s.evaluated_users > 1) {
    double ss = 0.0;
    for (const auto& v : per_user)
      if (v) ss += (*v - s.auc) * (*v - s.auc);
    const double n = static_cast<double>(s.evaluated_users);
    s.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

AucSummary auc(const SplitDataset& split, const ScoreFunction& score,
               unsigned workers) {
  const auto& g = split.training;
  std::vector<Index> users;
  for (Index u = 0; u < split.test_sets.size(); ++u)
    if (!split.test_sets[u].empty()) users.push_back(u);

  std::vector<std::optional<double>> per_user(users.size());
  std::vector<std::vector<double>> scratch(worker_count(users.size(), workers),
                                           std::vector<double>(g.n_items()));
  parallel_for(users.size(), workers, [&](std::size_t k, unsigned w) {
    const Index u = users[k];
    auto& scores = scratch[w];
    std::fill(scores.begin(), scores.end(), 0.0);
    score(u, scores);
    const auto profile = g.user_items(u);
    const auto& test = split.test_sets[u];
    std::vector<double> h, z;
    for (Index j = 0; j < g.n_items(); ++j) {
      if (std::binary_search(profile.begin(), profile.end(), j)) continue;
      (std::binary_search(test.begin(), test.end(), j) ? h : z).push_back(scores[j]);
    }
    per_user[k] = auc_user(h, z);
  });
  return summarize_auc(per_user);
}

AucSummary auc(const SplitDataset& split, BlendParameter lambda, unsigned workers) {
  const auto& g = split.training;
  return auc(
      split,
      [&](Index u, std::span<double> out) {
        const auto s = score_user(g, UserId{u}, lambda);
        std::copy(s.values().begin(), s.values().end(), out.begin());
      },
      workers);
}

double recall(std::span<const RecommendationList> lists,
              std::span<const std::vector<Index>> test_sets, std::size_t length) {
  double sum = 0.0;
  std::size_t users = 0;
  for (const auto& list : lists) {
    if (list.user >= test_sets.size()) continue;
    const auto& test = test_sets[list.user];
    if (test.empty()) continue;
    const std::size_t take = std::min(length, list.items.size());
    std::size_t hits = 0;
    for (std::size_t k = 0; k < take; ++k)
      hits += std::binary_search(test.begin(), test.end(), list.items[k]);
    sum += static_cast<double>(hits) / static_cast<double>(test.size());
    ++users;
  }
  if (users == 0) fail(ErrorKind::kData, "recall: no user with test items");
  return sum / static_cast<double>(users);
}

std::optional<DiversityEstimate> diversification(
    std::span<const RecommendationList> lists, std::size_t length,
    const PairSampling& sampling) {
  const std::size_t n = lists.size();
  if (n < 2) return std::nullopt;
  if (length == 0) fail(ErrorKind::kConfig, "list length must be >= 1");
  const double L = static_cast<double>(length);

  auto prefix = [&](const RecommendationList& l) {
    return std::span<const Index>(l.items).first(std::min(length, l.items.size()));
  };

  if (n > sampling.threshold) {
    Rng rng(sampling.seed);
    std::vector<Index> a, b;
    double sum = 0.0, sum_sq = 0.0;
    const std::size_t draws = std::max<std::size_t>(sampling.sample_size, 2);
    for (std::size_t k = 0; k < draws; ++k) {
      const auto i = uniform_below(rng, n);
      auto j = uniform_below(rng, n - 1);
      if (j >= i) ++j;
      const auto pi = prefix(lists[i]), pj = prefix(lists[j]);
      a.assign(pi.begin(), pi.end());
      b.assign(pj.begin(), pj.end());
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::size_t overlap = 0;
      for (auto x = a.begin(), y = b.begin(); x != a.end() && y != b.end();) {
        if (*x < *y) ++x;
        else if (*y < *x) ++y;
        else { ++overlap; ++x; ++y; }
      }
      const double d = 1.0 - static_cast<double>(overlap) / L;
      sum += d;
      sum_sq += d * d;
    }
    const double dn = static_cast<double>(draws);
    const double mean = sum / dn;
    const double var = std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0));
    return DiversityEstimate{mean, draws, std::sqrt(var / dn), true};
  }

  // sum over pairs of |overlap| = sum over items of C(c, 2), c = lists holding it.
  std::unordered_map<Index, std::uint64_t> holders;
  for (const auto& l : lists)
    for (Index item : prefix(l)) ++holders[item];
  std::uint64_t shared = 0;
  for (const auto& [item, c] : holders) shared += c * (c - 1) / 2;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return DiversityEstimate{1.0 - static_cast<double>(shared) / (L * pairs),
                           n * (n - 1) / 2, 0.0, false};
}

double novelty(std::span<const RecommendationList> lists,
               const TripartiteGraph& training, std::size_t length) {
  if (lists.empty()) fail(ErrorKind::kContract, "novelty needs at least one list");
  if (length == 0) fail(ErrorKind::kConfig, "list length must be >= 1");
  std::uint64_t degree_sum = 0;
  for (const auto& l : lists) {
    const std::size_t take = std::min(length, l.items.size());
    for (std::size_t k = 0; k < take; ++k) degree_sum += training.item_degree(l.items[k]);
  }
  return static_cast<double>(degree_sum) /
         (static_cast<double>(lists.size()) * static_cast<double>(length));
}

}  // namespace tagdiff
