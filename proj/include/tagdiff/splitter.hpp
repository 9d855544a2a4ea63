#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tagdiff/graph.hpp"
#include "tagdiff/record.hpp"

namespace tagdiff {

/// Held-out pairs that cannot be evaluated because the training graph lacks
/// their user or item. A pair missing both counts once in each field.
struct OrphanStats {
  std::size_t dropped_pairs = 0;
  std::size_t missing_users = 0;
  std::size_t missing_items = 0;
};

struct PairAssignment {
  std::string user;
  std::string item;
  bool test = false;
};

struct SplitDataset {
  TripartiteGraph training;
  /// Indexed by training user; sorted training-graph item indices.
  std::vector<std::vector<Index>> test_sets;
  OrphanStats orphans;
  /// Every distinct (user, item) pair in first-appearance order.
  std::vector<PairAssignment> pairs;
  std::size_t held_out = 0;  // before orphan filtering
  std::uint64_t seed = 0;

  std::size_t retained_test_pairs() const;
  /// Users with at least one retained test item.
  std::size_t users_with_tests() const;
  /// FNV-1a over the training edges and test sets; equal digests mean the
  /// same split.
  std::uint64_t digest() const;
};

/// Holds out ceil(test_fraction * P) of the P distinct (user, item) pairs,
/// chosen by a seeded Fisher-Yates draw. The training graph is built from
/// the remaining pairs and their tags only, in first-appearance order.
SplitDataset split(const RecordSet& records, double test_fraction,
                   std::uint64_t seed);

/// Number of pairs held out from `pairs` distinct pairs.
std::size_t held_out_count(std::size_t pairs, double test_fraction);

/// `user<TAB>item<TAB>train|test` per distinct pair.
void write_manifest(std::ostream& out, const SplitDataset& split);
void write_manifest(const std::filesystem::path& path,
                    const SplitDataset& split);

}  // namespace tagdiff
