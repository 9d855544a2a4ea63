#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tagdiff/graph.hpp"

namespace tagdiff {

/// Nonnegative, finite resource amount per item.
class ResourceVector {
 public:
  ResourceVector() = default;
  explicit ResourceVector(std::size_t items) : values_(items, 0.0) {}
  /// Throws kContract on a negative or non-finite entry.
  explicit ResourceVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double sum() const noexcept;

  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;

 private:
  friend class ResourceWriter;
  std::vector<double> values_;
};

/// The blend weight lambda in [0, 1]: 1 is pure user-item diffusion, 0 pure
/// item-tag diffusion.
class BlendParameter {
 public:
  /// Throws kConfig outside [0, 1].
  explicit BlendParameter(double lambda);
  double value() const noexcept { return lambda_; }

 private:
  double lambda_;
};

struct Diffused {
  ResourceVector resource;
  /// Resource that sat on items without any neighbor in the traversed
  /// relation; such items neither send nor receive.
  double mass_lost = 0.0;
};

/// Unit resource on every item the user collected, zero elsewhere.
ResourceVector initial_vector(const TripartiteGraph& graph, UserId user);

/// Items -> users -> items. Each item splits its resource evenly among its
/// users; each user splits what it received evenly among its items.
Diffused diffuse_user_item(const TripartiteGraph& graph, const ResourceVector& f);

/// Items -> tags -> items, with the same even splitting on the item-tag side.
Diffused diffuse_item_tag(const TripartiteGraph& graph, const ResourceVector& f);

/// lambda * user_item + (1 - lambda) * item_tag, elementwise.
ResourceVector integrate(const ResourceVector& user_item,
                         const ResourceVector& item_tag, BlendParameter lambda);

/// integrate(diffuse_user_item(f0), diffuse_item_tag(f0), lambda) with f0 the
/// user's initial vector.
ResourceVector score_user(const TripartiteGraph& graph, UserId user,
                          BlendParameter lambda);

/// Scores one user at a time touching only the part of the graph reachable
/// from the user's profile. Holds dense scratch buffers sized to the graph,
/// so keep one per thread and reuse it across users. Results are bitwise
/// identical to diffuse_user_item / diffuse_item_tag on the initial vector.
class SparseScorer {
 public:
  explicit SparseScorer(const TripartiteGraph& graph);

  /// Replaces the current state with the diffusions of `user`.
  void diffuse(Index user);

  /// Items with a nonzero value in either diffusion, ascending.
  std::span<const Index> reached() const noexcept { return reached_; }
  double user_item(Index item) const noexcept { return user_item_[item]; }
  double item_tag(Index item) const noexcept { return item_tag_[item]; }
  double blended(Index item, double lambda) const noexcept {
    return lambda * user_item_[item] + (1.0 - lambda) * item_tag_[item];
  }
  const TripartiteGraph& graph() const noexcept { return *graph_; }

 private:
  const TripartiteGraph* graph_;
  std::vector<double> user_item_, item_tag_;
  std::vector<double> user_mass_, tag_mass_;
  std::vector<Index> users_, tags_, reached_;
  std::vector<char> item_mark_;
};

}  // namespace tagdiff
