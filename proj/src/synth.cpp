#include "tagdiff/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "tagdiff/error.hpp"
#include "tagdiff/ingestion.hpp"
#include "tagdiff/random.hpp"

namespace tagdiff {
namespace {

// Cumulative-weight sampler over a fixed candidate list.
class WeightedPool {
 public:
  void add(std::size_t value, double weight) {
    values_.push_back(value);
    cumulative_.push_back((cumulative_.empty() ? 0.0 : cumulative_.back()) + weight);
  }
  bool empty() const { return values_.empty(); }
  std::size_t draw(Rng& rng) const {
    const double x = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) --it;
    return values_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

 private:
  std::vector<std::size_t> values_;
  std::vector<double> cumulative_;
};

}  // namespace

void SynthConfig::validate() const {
  if (users == 0 || items == 0 || tags == 0 || topics == 0)
    fail(ErrorKind::kConfig, "synth counts must be >= 1");
  if (topics > items || topics > tags)
    fail(ErrorKind::kConfig, "synth needs at least one item and tag per topic");
  if (!(mean_profile >= 1.0))
    fail(ErrorKind::kConfig, "mean profile size must be >= 1");
  if (max_tags_per_collection == 0)
    fail(ErrorKind::kConfig, "max tags per collection must be >= 1");
  for (double p : {signal, topic_affinity})
    if (!(p >= 0.0 && p <= 1.0))
      fail(ErrorKind::kConfig, "synth probabilities must lie in [0, 1]");
  if (!(popularity_exponent >= 0.0))
    fail(ErrorKind::kConfig, "popularity exponent must be >= 0");
}

RecordSet synth_generate_raw(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);

  // Topics are assigned round-robin over a shuffled order so every topic
  // owns at least one item; popularity rank is an independent shuffle.
  auto shuffled = [&](std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
    return v;
  };
  std::vector<std::size_t> item_topic(config.items);
  {
    const auto order = shuffled(config.items);
    for (std::size_t k = 0; k < config.items; ++k) item_topic[order[k]] = k % config.topics;
  }
  const auto popularity_rank = shuffled(config.items);

  WeightedPool all_items;
  std::vector<WeightedPool> topic_items(config.topics);
  for (std::size_t i = 0; i < config.items; ++i) {
    const double w = std::pow(static_cast<double>(popularity_rank[i] + 1),
                              -config.popularity_exponent);
    all_items.add(i, w);
    topic_items[item_topic[i]].add(i, w);
  }
  std::vector<WeightedPool> topic_tags(config.topics);
  for (std::size_t t = 0; t < config.tags; ++t) {
    const std::size_t c = t % config.topics;
    const double rank = static_cast<double>(t / config.topics + 1);
    topic_tags[c].add(t, 1.0 / rank);
  }

  const double stop = 1.0 / config.mean_profile;
  RecordSet records;
  std::vector<char> taken(config.items, 0);
  std::vector<std::size_t> profile;
  for (std::size_t u = 0; u < config.users; ++u) {
    const std::size_t topic = uniform_below(rng, config.topics);
    std::size_t size = 1;
    while (uniform01(rng) >= stop) ++size;
    size = std::min(size, config.items);

    profile.clear();
    for (std::size_t attempts = 0; profile.size() < size && attempts < 50 * size;
         ++attempts) {
      const std::size_t i = uniform01(rng) < config.topic_affinity
                                ? topic_items[topic].draw(rng)
                                : all_items.draw(rng);
      if (taken[i]) continue;
      taken[i] = 1;
      profile.push_back(i);
    }
    for (std::size_t i : profile) {
      taken[i] = 0;
      InteractionRecord r{"u" + std::to_string(u), "i" + std::to_string(i), {}};
      const std::size_t h = 1 + uniform_below(rng, config.max_tags_per_collection);
      for (std::size_t k = 0; k < h; ++k) {
        const std::size_t t = uniform01(rng) < config.signal
                                  ? topic_tags[item_topic[i]].draw(rng)
                                  : uniform_below(rng, config.tags);
        auto label = "t" + std::to_string(t);
        if (std::find(r.tags.begin(), r.tags.end(), label) == r.tags.end())
          r.tags.push_back(std::move(label));
      }
      records.push_back(std::move(r));
    }
  }
  return records;
}

RecordSet synth_generate(const SynthConfig& config) {
  return purify(synth_generate_raw(config)).records;
}

}  // namespace tagdiff
