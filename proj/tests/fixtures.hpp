#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tagdiff/graph.hpp"
#include "tagdiff/random.hpp"
#include "tagdiff/record.hpp"

namespace tagdiff::testing {

// Two users, three items, two tags:
//   u1 collects i1, i2; u2 collects i2, i3
//   i1:{t1}, i2:{t1,t2}, i3:{t1,t2}
inline RecordSet g1_records() {
  return {{"u1", "i1", {"t1"}},
          {"u1", "i2", {"t1"}},
          {"u2", "i2", {"t2"}},
          {"u2", "i3", {"t1", "t2"}}};
}

// Three users, five items, four tags: the standard worked example. User-item
// edges are fixed uniquely (up to swapping U2 and U3) by
// f = (1,0,1,0,1) -> f' = (3/4, 5/12, 2/3, 5/12, 3/4). The item-tag edges
// are the configuration that reproduces four of the five reference f''
// entries; see diffusion_test.cpp for the fifth.
//   U1: I1 I3 I5     U2: I2 I3 I4     U3: I1 I2 I4 I5
//   T1: I2 I4 I5     T2: I1 I3 I4     T3: I1 I3     T4: I1 I2
inline RecordSet worked_example_records() {
  const std::vector<std::vector<std::string>> item_tags = {
      {"T2", "T3", "T4"}, {"T1", "T4"}, {"T2", "T3"}, {"T1", "T2"}, {"T1"}};
  auto rec = [&](const char* u, int item) {
    return InteractionRecord{u, "I" + std::to_string(item + 1),
                             item_tags[static_cast<std::size_t>(item)]};
  };
  // Ordered so that items get indices I1..I5 by first appearance.
  return {rec("U1", 0), rec("U2", 1), rec("U1", 2), rec("U2", 3), rec("U1", 4),
          rec("U2", 2), rec("U3", 0), rec("U3", 1), rec("U3", 3), rec("U3", 4)};
}

struct RandomGraphSpec {
  std::size_t users, items, tags;
  std::vector<std::pair<std::size_t, std::size_t>> user_item;  // labels u<k>, i<k>
  std::vector<std::pair<std::size_t, std::size_t>> item_tag;   // labels i<k>, t<k>
  RecordSet records;
};

// Random small tripartite data: every item gets at least one user, tag
// density may leave items untagged. Records list each user-item pair with all
// of the item's tags.
inline RandomGraphSpec random_graph(Rng& rng, std::size_t max_nodes = 20) {
  RandomGraphSpec spec;
  spec.users = 1 + uniform_below(rng, max_nodes);
  spec.items = 1 + uniform_below(rng, max_nodes);
  spec.tags = 1 + uniform_below(rng, max_nodes);
  const double ui_density = 0.05 + 0.9 * uniform01(rng);
  // Occasionally very sparse tagging so that zero-tag items are common.
  const double it_density = uniform01(rng) < 0.25 ? 0.03 : 0.05 + 0.9 * uniform01(rng);

  std::vector<std::vector<std::size_t>> users_of(spec.items), tags_of(spec.items);
  for (std::size_t i = 0; i < spec.items; ++i) {
    for (std::size_t u = 0; u < spec.users; ++u)
      if (uniform01(rng) < ui_density) users_of[i].push_back(u);
    if (users_of[i].empty()) users_of[i].push_back(uniform_below(rng, spec.users));
    for (std::size_t t = 0; t < spec.tags; ++t)
      if (uniform01(rng) < it_density) tags_of[i].push_back(t);
  }
  for (std::size_t i = 0; i < spec.items; ++i) {
    for (auto u : users_of[i]) spec.user_item.emplace_back(u, i);
    for (auto t : tags_of[i]) spec.item_tag.emplace_back(i, t);
    std::vector<std::string> tags;
    for (auto t : tags_of[i]) tags.push_back("t" + std::to_string(t));
    for (auto u : users_of[i])
      spec.records.push_back({"u" + std::to_string(u), "i" + std::to_string(i), tags});
  }
  // Shuffle record order so index assignment differs from label numbering.
  for (std::size_t k = spec.records.size(); k > 1; --k)
    std::swap(spec.records[k - 1], spec.records[uniform_below(rng, k)]);
  return spec;
}

}  // namespace tagdiff::testing
