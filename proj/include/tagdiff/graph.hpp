#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tagdiff/record.hpp"

namespace tagdiff {

using Index = std::uint32_t;

/// Dense 0-based index inside one node class. The tag parameter keeps user,
/// item and tag indices from being mixed up at API boundaries.
template <class Class>
struct EntityId {
  Index value = 0;
  friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

struct UserClass;
struct ItemClass;
struct TagClass;
using UserId = EntityId<UserClass>;
using ItemId = EntityId<ItemClass>;
using TagId = EntityId<TagClass>;

enum class Relation { kUserItems, kItemUsers, kItemTags, kTagItems };

/// Bijection between external labels and dense indices, in first-appearance
/// order.
class LabelMap {
 public:
  /// Returns the index of `label`, assigning the next free one if unseen.
  Index intern(std::string_view label);
  std::optional<Index> find(std::string_view label) const;
  const std::string& label(Index index) const;
  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const std::string> labels() const noexcept { return labels_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index, Hash, std::equal_to<>> index_;
};

/// Compressed sparse rows of a binary matrix; every row sorted, no duplicates.
class Csr {
 public:
  Csr() = default;
  /// Builds from (row, col) pairs. Duplicates collapse; returns how many did.
  static Csr from_pairs(std::size_t rows,
                        std::vector<std::pair<Index, Index>> pairs,
                        std::size_t* duplicates = nullptr);
  Csr transposed(std::size_t cols) const;

  std::size_t rows() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t nnz() const noexcept { return cols_.size(); }
  std::span<const Index> row(std::size_t r) const noexcept {
    return {cols_.data() + offsets_[r], cols_.data() + offsets_[r + 1]};
  }
  std::size_t degree(std::size_t r) const noexcept {
    return offsets_[r + 1] - offsets_[r];
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> cols_;
};

struct GraphBuildStats {
  std::size_t records = 0;
  std::size_t duplicate_user_items = 0;  // repeated (user, item) pairs collapsed
  std::size_t duplicate_item_tags = 0;   // repeated (item, tag) pairs collapsed
};

/// Immutable user-item-tag graph: the user-item matrix A and item-tag matrix
/// A' stored in both directions, plus the degree of every node.
class TripartiteGraph {
 public:
  std::size_t n_users() const noexcept { return users_.size(); }
  std::size_t n_items() const noexcept { return items_.size(); }
  std::size_t n_tags() const noexcept { return tags_.size(); }

  std::span<const Index> user_items(Index u) const noexcept { return user_items_.row(u); }
  std::span<const Index> item_users(Index i) const noexcept { return item_users_.row(i); }
  std::span<const Index> item_tags(Index i) const noexcept { return item_tags_.row(i); }
  std::span<const Index> tag_items(Index t) const noexcept { return tag_items_.row(t); }

  /// k(U): items collected by the user.
  std::size_t user_degree(Index u) const noexcept { return user_items_.degree(u); }
  /// k(I): users who collected the item.
  std::size_t item_degree(Index i) const noexcept { return item_users_.degree(i); }
  /// k(T): items carrying the tag.
  std::size_t tag_degree(Index t) const noexcept { return tag_items_.degree(t); }
  /// k'(I): tags attached to the item.
  std::size_t item_tag_degree(Index i) const noexcept { return item_tags_.degree(i); }

  /// Bounds-checked adjacency lookup. `entity` indexes the source class of
  /// `relation` (users for kUserItems, items for kItemUsers / kItemTags, ...).
  std::span<const Index> neighbors(Index entity, Relation relation) const;
  std::span<const Index> neighbors(UserId u) const { return neighbors(u.value, Relation::kUserItems); }
  std::span<const Index> neighbors(TagId t) const { return neighbors(t.value, Relation::kTagItems); }

  std::size_t user_item_edges() const noexcept { return user_items_.nnz(); }
  std::size_t item_tag_edges() const noexcept { return item_tags_.nnz(); }

  /// <k>: mean number of users per item.
  double mean_item_degree() const noexcept;
  /// <k'>: mean number of tags per item.
  double mean_item_tag_degree() const noexcept;

  const LabelMap& users() const noexcept { return users_; }
  const LabelMap& items() const noexcept { return items_; }
  const LabelMap& tags() const noexcept { return tags_; }
  const GraphBuildStats& build_stats() const noexcept { return stats_; }

 private:
  friend class GraphBuilder;

  LabelMap users_, items_, tags_;
  Csr user_items_, item_users_, item_tags_, tag_items_;
  GraphBuildStats stats_;
};

/// Accumulates interactions; indices follow first appearance of each label.
class GraphBuilder {
 public:
  void add(std::string_view user, std::string_view item,
           std::span<const std::string> tags);
  void add(const InteractionRecord& record) {
    add(record.user, record.item, record.tags);
  }
  /// Consumes the builder. Throws kData when nothing was added.
  TripartiteGraph build() &&;

 private:
  TripartiteGraph graph_;
  std::vector<std::pair<Index, Index>> user_item_;
  std::vector<std::pair<Index, Index>> item_tag_;
};

/// One user-item edge per distinct (user, item) pair and one item-tag edge per
/// distinct (item, tag) pair, tags pooled over every user of the item.
TripartiteGraph build_graph(std::span<const InteractionRecord> records);

}  // namespace tagdiff
