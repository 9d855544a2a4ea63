#include "tagdiff/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tagdiff/error.hpp"

namespace tagdiff {

class ResourceWriter {
 public:
  static std::vector<double>& values(ResourceVector& v) { return v.values_; }
};

namespace {

void check_input(const TripartiteGraph& graph, const ResourceVector& f) {
  if (f.size() != graph.n_items())
    fail(ErrorKind::kContract, "resource vector has length " +
                                   std::to_string(f.size()) + ", graph has " +
                                   std::to_string(graph.n_items()) + " items");
}

// Generic two-step spread through an intermediate class. `item_side(i)`
// lists the intermediates of item i, `middle_side(x)` the items of
// intermediate x. Intermediates are visited in ascending order, matching
// SparseScorer's summation order exactly.
template <class ItemSide, class MiddleSide>
Diffused spread(const TripartiteGraph& graph, const ResourceVector& f,
                std::size_t middle_count, ItemSide item_side,
                MiddleSide middle_side) {
  check_input(graph, f);
  const std::size_t m = graph.n_items();
  std::vector<double> middle(middle_count, 0.0);
  Diffused out{ResourceVector(m), 0.0};

  for (Index s = 0; s < m; ++s) {
    if (f[s] == 0.0) continue;
    const auto nbrs = item_side(s);
    if (nbrs.empty()) {
      out.mass_lost += f[s];
      continue;
    }
    const double share = f[s] / static_cast<double>(nbrs.size());
    for (Index x : nbrs) middle[x] += share;
  }

  auto& values = ResourceWriter::values(out.resource);
  for (std::size_t x = 0; x < middle_count; ++x) {
    if (middle[x] == 0.0) continue;
    const auto items = middle_side(static_cast<Index>(x));
    const double share = middle[x] / static_cast<double>(items.size());
    for (Index j : items) values[j] += share;
  }
  return out;
}

}  // namespace

ResourceVector::ResourceVector(std::vector<double> values)
    : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
      fail(ErrorKind::kContract, "resource entry " + std::to_string(i) +
                                     " is negative or non-finite");
}

double ResourceVector::sum() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

BlendParameter::BlendParameter(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    fail(ErrorKind::kConfig,
         "lambda must lie in [0, 1], got " + std::to_string(lambda));
}

ResourceVector initial_vector(const TripartiteGraph& graph, UserId user) {
  ResourceVector f(graph.n_items());
  auto& values = ResourceWriter::values(f);
  for (Index j : graph.neighbors(user)) values[j] = 1.0;
  return f;
}

Diffused diffuse_user_item(const TripartiteGraph& graph, const ResourceVector& f) {
  return spread(
      graph, f, graph.n_users(), [&](Index i) { return graph.item_users(i); },
      [&](Index u) { return graph.user_items(u); });
}

Diffused diffuse_item_tag(const TripartiteGraph& graph, const ResourceVector& f) {
  return spread(
      graph, f, graph.n_tags(), [&](Index i) { return graph.item_tags(i); },
      [&](Index t) { return graph.tag_items(t); });
}

ResourceVector integrate(const ResourceVector& user_item,
                         const ResourceVector& item_tag, BlendParameter lambda) {
  if (user_item.size() != item_tag.size())
    fail(ErrorKind::kContract, "cannot blend vectors of lengths " +
                                   std::to_string(user_item.size()) + " and " +
                                   std::to_string(item_tag.size()));
  const double l = lambda.value();
  ResourceVector out(user_item.size());
  auto& values = ResourceWriter::values(out);
  for (std::size_t j = 0; j < values.size(); ++j)
    values[j] = l * user_item[j] + (1.0 - l) * item_tag[j];
  return out;
}

ResourceVector score_user(const TripartiteGraph& graph, UserId user,
                          BlendParameter lambda) {
  const auto f0 = initial_vector(graph, user);
  return integrate(diffuse_user_item(graph, f0).resource,
                   diffuse_item_tag(graph, f0).resource, lambda);
}

SparseScorer::SparseScorer(const TripartiteGraph& graph)
    : graph_(&graph),
      user_item_(graph.n_items(), 0.0),
      item_tag_(graph.n_items(), 0.0),
      user_mass_(graph.n_users(), 0.0),
      tag_mass_(graph.n_tags(), 0.0),
      item_mark_(graph.n_items(), 0) {}

void SparseScorer::diffuse(Index user) {
  const auto& g = *graph_;
  const auto profile = g.neighbors(user, Relation::kUserItems);

  for (Index j : reached_) {
    user_item_[j] = 0.0;
    item_tag_[j] = 0.0;
    item_mark_[j] = 0;
  }
  reached_.clear();
  users_.clear();
  tags_.clear();

  // Items with unit resource: share 1/k per neighbor, ascending item order.
  for (Index s : profile) {
    const auto us = g.item_users(s);
    if (!us.empty()) {
      const double share = 1.0 / static_cast<double>(us.size());
      for (Index l : us) {
        if (user_mass_[l] == 0.0) users_.push_back(l);
        user_mass_[l] += share;
      }
    }
    const auto ts = g.item_tags(s);
    if (!ts.empty()) {
      const double share = 1.0 / static_cast<double>(ts.size());
      for (Index t : ts) {
        if (tag_mass_[t] == 0.0) tags_.push_back(t);
        tag_mass_[t] += share;
      }
    }
  }

  auto touch = [this](Index j) {
    if (!item_mark_[j]) {
      item_mark_[j] = 1;
      reached_.push_back(j);
    }
  };
  std::sort(users_.begin(), users_.end());
  for (Index l : users_) {
    const auto items = g.user_items(l);
    const double share = user_mass_[l] / static_cast<double>(items.size());
    user_mass_[l] = 0.0;
    for (Index j : items) {
      user_item_[j] += share;
      touch(j);
    }
  }
  std::sort(tags_.begin(), tags_.end());
  for (Index t : tags_) {
    const auto items = g.tag_items(t);
    const double share = tag_mass_[t] / static_cast<double>(items.size());
    tag_mass_[t] = 0.0;
    for (Index j : items) {
      item_tag_[j] += share;
      touch(j);
    }
  }
  std::sort(reached_.begin(), reached_.end());
}

}  // namespace tagdiff
