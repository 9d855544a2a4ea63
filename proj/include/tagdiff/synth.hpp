#pragma once

#include <cstddef>
#include <cstdint>

#include "tagdiff/record.hpp"

namespace tagdiff {

/// Latent-topic generator standing in for real tagging dumps.
///
/// Every user and item draws a topic. A user's profile size is 1 plus a
/// geometric variable, so the mean is `mean_profile`. Each collection picks
/// an item of the user's topic with probability `topic_affinity`, otherwise
/// any item; within either pool items are drawn with Zipf weights
/// (rank + 1)^-popularity_exponent, giving the heavy-tailed item degrees of
/// real data. Each collection carries 1..max_tags_per_collection tags; each
/// tag comes from the item topic's tag pool (Zipf weighted) with probability
/// `signal`, otherwise uniformly from all tags.
struct SynthConfig {
  std::size_t users = 100;
  std::size_t items = 500;
  std::size_t tags = 200;
  std::size_t topics = 10;
  double mean_profile = 10.0;
  double topic_affinity = 0.8;
  double popularity_exponent = 1.0;
  std::size_t max_tags_per_collection = 3;
  double signal = 0.9;
  std::uint64_t seed = 0;

  /// Throws kConfig on zero counts, topics > items or topics > tags,
  /// mean_profile < 1, or probabilities outside [0, 1].
  void validate() const;
};

/// Raw records, one per collection, before purification.
RecordSet synth_generate_raw(const SynthConfig& config);

/// synth_generate_raw followed by purify with the default policy. Throws
/// kData when purification leaves nothing.
RecordSet synth_generate(const SynthConfig& config);

}  // namespace tagdiff
