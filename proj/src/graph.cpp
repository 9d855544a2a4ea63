#include "tagdiff/graph.hpp"

#include <algorithm>
#include <limits>

#include "tagdiff/error.hpp"

namespace tagdiff {

Index LabelMap::intern(std::string_view label) {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  if (labels_.size() >= std::numeric_limits<Index>::max())
    fail(ErrorKind::kData, "too many distinct labels");
  const auto id = static_cast<Index>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

std::optional<Index> LabelMap::find(std::string_view label) const {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  return std::nullopt;
}

const std::string& LabelMap::label(Index index) const {
  if (index >= labels_.size())
    fail(ErrorKind::kBounds, "label index " + std::to_string(index) +
                                 " out of range [0, " +
                                 std::to_string(labels_.size()) + ")");
  return labels_[index];
}

Csr Csr::from_pairs(std::size_t rows, std::vector<std::pair<Index, Index>> pairs,
                    std::size_t* duplicates) {
  std::sort(pairs.begin(), pairs.end());
  const auto before = pairs.size();
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (duplicates) *duplicates = before - pairs.size();

  Csr csr;
  csr.offsets_.assign(rows + 1, 0);
  csr.cols_.reserve(pairs.size());
  for (const auto& [r, c] : pairs) {
    ++csr.offsets_[r + 1];
    csr.cols_.push_back(c);
  }
  for (std::size_t r = 0; r < rows; ++r) csr.offsets_[r + 1] += csr.offsets_[r];
  return csr;
}

Csr Csr::transposed(std::size_t cols) const {
  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(nnz());
  for (std::size_t r = 0; r < rows(); ++r)
    for (Index c : row(r)) pairs.emplace_back(c, static_cast<Index>(r));
  return from_pairs(cols, std::move(pairs));
}

std::span<const Index> TripartiteGraph::neighbors(Index entity,
                                                  Relation relation) const {
  const Csr* csr = nullptr;
  const char* what = "";
  switch (relation) {
    case Relation::kUserItems: csr = &user_items_; what = "user"; break;
    case Relation::kItemUsers: csr = &item_users_; what = "item"; break;
    case Relation::kItemTags: csr = &item_tags_; what = "item"; break;
    case Relation::kTagItems: csr = &tag_items_; what = "tag"; break;
  }
  if (entity >= csr->rows())
    fail(ErrorKind::kBounds, std::string(what) + " index " +
                                 std::to_string(entity) + " out of range [0, " +
                                 std::to_string(csr->rows()) + ")");
  return csr->row(entity);
}

double TripartiteGraph::mean_item_degree() const noexcept {
  return n_items() == 0 ? 0.0
                        : static_cast<double>(user_item_edges()) / n_items();
}

double TripartiteGraph::mean_item_tag_degree() const noexcept {
  return n_items() == 0 ? 0.0
                        : static_cast<double>(item_tag_edges()) / n_items();
}

void GraphBuilder::add(std::string_view user, std::string_view item,
                       std::span<const std::string> tags) {
  if (user.empty() || item.empty())
    fail(ErrorKind::kData, "interaction with empty user or item label");
  const Index u = graph_.users_.intern(user);
  const Index i = graph_.items_.intern(item);
  user_item_.emplace_back(u, i);
  for (const auto& tag : tags) {
    if (tag.empty()) fail(ErrorKind::kData, "empty tag label");
    item_tag_.emplace_back(i, graph_.tags_.intern(tag));
  }
  ++graph_.stats_.records;
}

TripartiteGraph GraphBuilder::build() && {
  if (user_item_.empty())
    fail(ErrorKind::kData, "cannot build a graph from zero interactions");
  TripartiteGraph g = std::move(graph_);
  g.user_items_ = Csr::from_pairs(g.n_users(), std::move(user_item_),
                                  &g.stats_.duplicate_user_items);
  g.item_users_ = g.user_items_.transposed(g.n_items());
  g.item_tags_ = Csr::from_pairs(g.n_items(), std::move(item_tag_),
                                 &g.stats_.duplicate_item_tags);
  g.tag_items_ = g.item_tags_.transposed(g.n_tags());
  return g;
}

TripartiteGraph build_graph(std::span<const InteractionRecord> records) {
  GraphBuilder builder;
  for (const auto& r : records) builder.add(r);
  return std::move(builder).build();
}

}  // namespace tagdiff
