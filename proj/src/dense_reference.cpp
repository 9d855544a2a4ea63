#include "tagdiff/dense_reference.hpp"

#include <string>

#include "tagdiff/diffusion.hpp"
#include "tagdiff/error.hpp"

namespace tagdiff {
namespace {

// W[j][s] = sum_x B[x][j] B[x][s] / (k(x) k(s)), with B the item-by-middle
// incidence given as per-item neighbor lists.
std::vector<double> transition(std::size_t m, std::size_t middle,
                               auto item_side) {
  std::vector<double> incidence(middle * m, 0.0);
  std::vector<double> middle_degree(middle, 0.0), item_degree(m, 0.0);
  for (Index s = 0; s < m; ++s)
    for (Index x : item_side(s)) {
      incidence[x * m + s] = 1.0;
      middle_degree[x] += 1.0;
      item_degree[s] += 1.0;
    }
  std::vector<double> w(m * m, 0.0);
  for (std::size_t x = 0; x < middle; ++x) {
    if (middle_degree[x] == 0.0) continue;
    const double* row = &incidence[x * m];
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] == 0.0) continue;
      for (std::size_t s = 0; s < m; ++s)
        if (row[s] != 0.0) w[j * m + s] += 1.0 / (middle_degree[x] * item_degree[s]);
    }
  }
  return w;
}

}  // namespace

DenseTransitions dense_transitions(const TripartiteGraph& graph) {
  const std::size_t m = graph.n_items();
  if (m > kDenseReferenceMaxItems)
    fail(ErrorKind::kData, "dense reference refuses graphs with more than " +
                               std::to_string(kDenseReferenceMaxItems) +
                               " items (got " + std::to_string(m) + ")");
  return {m,
          transition(m, graph.n_users(),
                     [&](Index s) { return graph.item_users(s); }),
          transition(m, graph.n_tags(),
                     [&](Index s) { return graph.item_tags(s); })};
}

std::vector<double> dense_scores(const TripartiteGraph& graph, UserId user,
                                 double lambda) {
  const BlendParameter blend(lambda);
  const auto w = dense_transitions(graph);
  const auto f = initial_vector(graph, user);
  const std::size_t m = w.items;
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double ui = 0.0, it = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      ui += w.user_item[j * m + s] * f[s];
      it += w.item_tag[j * m + s] * f[s];
    }
    out[j] = blend.value() * ui + (1.0 - blend.value()) * it;
  }
  return out;
}

}  // namespace tagdiff
