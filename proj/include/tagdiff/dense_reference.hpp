#pragma once

#include <cstddef>
#include <vector>

#include "tagdiff/graph.hpp"

namespace tagdiff {

/// Largest item count the dense reference accepts; it stores two m x m
/// transition matrices.
inline constexpr std::size_t kDenseReferenceMaxItems = 2000;

/// Row-major m x m transition matrices built explicitly from the degree
/// normalized adjacency: user_item = A^T D_U^-1 A D_I^-1 and
/// item_tag = A' D_T^-1 A'^T D'_I^-1. Column s is where a unit on item s ends.
struct DenseTransitions {
  std::size_t items = 0;
  std::vector<double> user_item;
  std::vector<double> item_tag;
};

/// Throws kData when the graph has more than kDenseReferenceMaxItems items.
DenseTransitions dense_transitions(const TripartiteGraph& graph);

/// Blended scores of every item for `user`, computed by dense matrix-vector
/// products. Used to cross-check the sparse kernels from the command line.
std::vector<double> dense_scores(const TripartiteGraph& graph, UserId user,
                                 double lambda);

}  // namespace tagdiff
