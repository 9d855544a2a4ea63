#include "tagdiff/recommender.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "tagdiff/error.hpp"
#include "tagdiff/format.hpp"

namespace tagdiff {
namespace {

void check_scorable(const TripartiteGraph& graph, Index user, std::size_t length) {
  if (length == 0) fail(ErrorKind::kConfig, "recommendation length must be >= 1");
  if (graph.neighbors(user, Relation::kUserItems).empty())
    fail(ErrorKind::kUnscorable,
         "user '" + graph.users().label(user) + "' has no collected items");
}

struct ByScore {
  std::span<const double> scores;
  bool operator()(Index a, Index b) const {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  }
};

}  // namespace

RecommendationList recommend(const TripartiteGraph& graph, UserId user,
                             BlendParameter lambda, std::size_t length) {
  check_scorable(graph, user.value, length);
  const auto scores = score_user(graph, user, lambda);
  const auto profile = graph.user_items(user.value);

  std::vector<Index> candidates;
  candidates.reserve(graph.n_items() - profile.size());
  auto p = profile.begin();
  for (Index j = 0; j < graph.n_items(); ++j) {
    if (p != profile.end() && *p == j) {
      ++p;
      continue;
    }
    candidates.push_back(j);
  }

  RecommendationList list{user.value, {}, {}, candidates.size() < length};
  const std::size_t take = std::min(length, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + take,
                    candidates.end(), ByScore{scores.values()});
  for (std::size_t k = 0; k < take; ++k) {
    list.items.push_back(candidates[k]);
    list.scores.push_back(scores[candidates[k]]);
  }
  return list;
}

RecommendationList recommend(const SparseScorer& scorer, Index user,
                             double lambda, std::size_t length) {
  const auto& graph = scorer.graph();
  check_scorable(graph, user, length);
  const auto profile = graph.user_items(user);

  // Positive scores can only sit on reached items; everything else ties at 0
  // and is taken in ascending index order.
  std::vector<Index> positive;
  auto p = profile.begin();
  for (Index j : scorer.reached()) {
    while (p != profile.end() && *p < j) ++p;
    if (p != profile.end() && *p == j) continue;
    if (scorer.blended(j, lambda) > 0.0) positive.push_back(j);
  }

  auto better = [&](Index a, Index b) {
    const double sa = scorer.blended(a, lambda), sb = scorer.blended(b, lambda);
    if (sa != sb) return sa > sb;
    return a < b;
  };
  const std::size_t take = std::min(length, positive.size());
  std::partial_sort(positive.begin(), positive.begin() + take, positive.end(),
                    better);

  const std::size_t candidates = graph.n_items() - profile.size();
  RecommendationList list{user, {}, {}, candidates < length};
  for (std::size_t k = 0; k < take; ++k) {
    list.items.push_back(positive[k]);
    list.scores.push_back(scorer.blended(positive[k], lambda));
  }
  p = profile.begin();
  for (Index j = 0; j < graph.n_items() && list.items.size() < length; ++j) {
    while (p != profile.end() && *p < j) ++p;
    if (p != profile.end() && *p == j) continue;
    if (scorer.blended(j, lambda) > 0.0) continue;
    list.items.push_back(j);
    list.scores.push_back(0.0);
  }
  return list;
}

std::vector<ProbeRank> rank_of_items(const TripartiteGraph& graph, UserId user,
                                     BlendParameter lambda,
                                     std::span<const Index> probe_items) {
  const auto profile = graph.neighbors(user);
  for (Index probe : probe_items) {
    if (probe >= graph.n_items())
      fail(ErrorKind::kBounds, "probe item " + std::to_string(probe) +
                                   " out of range");
    if (std::binary_search(profile.begin(), profile.end(), probe))
      fail(ErrorKind::kContract, "probe item '" + graph.items().label(probe) +
                                     "' is in the user's training profile");
  }
  const auto scores = score_user(graph, user, lambda);

  std::vector<double> candidate_scores;
  candidate_scores.reserve(graph.n_items());
  auto p = profile.begin();
  for (Index j = 0; j < graph.n_items(); ++j) {
    if (p != profile.end() && *p == j) {
      ++p;
      continue;
    }
    candidate_scores.push_back(scores[j]);
  }
  std::sort(candidate_scores.begin(), candidate_scores.end(),
            std::greater<double>());

  std::vector<ProbeRank> out;
  out.reserve(probe_items.size());
  for (Index probe : probe_items) {
    const double s = scores[probe];
    const auto [lo, hi] = std::equal_range(candidate_scores.begin(),
                                           candidate_scores.end(), s,
                                           std::greater<double>());
    const double above = static_cast<double>(lo - candidate_scores.begin());
    const double tied = static_cast<double>(hi - lo);
    out.push_back({probe, s, above + (tied + 1.0) / 2.0});
  }
  return out;
}

void write_recommendations(std::ostream& out, const TripartiteGraph& graph,
                           std::span<const RecommendationList> lists) {
  for (const auto& list : lists)
    for (std::size_t k = 0; k < list.items.size(); ++k)
      out << graph.users().label(list.user) << '\t' << (k + 1) << '\t'
          << graph.items().label(list.items[k]) << '\t'
          << format_shortest(list.scores[k]) << '\n';
}

}  // namespace tagdiff
