#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "tagdiff/diffusion.hpp"
#include "tagdiff/graph.hpp"

namespace tagdiff {

/// Top-L uncollected items for one user, best first. Ties are broken by
/// ascending item index, so the list for L is a prefix of the list for L+1.
struct RecommendationList {
  Index user = 0;
  std::vector<Index> items;
  std::vector<double> scores;
  /// Fewer than L uncollected items existed.
  bool short_list = false;
};

/// Throws kUnscorable for a user with no collected items, kConfig for L = 0.
RecommendationList recommend(const TripartiteGraph& graph, UserId user,
                             BlendParameter lambda, std::size_t length);

/// Same list computed from a scorer that has already diffused `user`.
/// `length` must be positive.
RecommendationList recommend(const SparseScorer& scorer, Index user,
                             double lambda, std::size_t length);

struct ProbeRank {
  Index item = 0;
  double score = 0.0;
  /// 1-based rank among uncollected items by descending score; a tie group
  /// shares the mean of the positions it spans.
  double rank = 0.0;
};

/// Throws kContract if a probe item is in the user's profile.
std::vector<ProbeRank> rank_of_items(const TripartiteGraph& graph, UserId user,
                                     BlendParameter lambda,
                                     std::span<const Index> probe_items);

/// `user_label<TAB>rank<TAB>item_label<TAB>score`, scores printed as the
/// shortest round-trip decimal.
void write_recommendations(std::ostream& out, const TripartiteGraph& graph,
                           std::span<const RecommendationList> lists);

}  // namespace tagdiff
