#include "tagdiff/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>

#include "tagdiff/error.hpp"
#include "tagdiff/random.hpp"

namespace tagdiff {

std::size_t held_out_count(std::size_t pairs, double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    fail(ErrorKind::kConfig, "test fraction must lie in (0, 1), got " +
                                 std::to_string(test_fraction));
  const double exact = test_fraction * static_cast<double>(pairs);
  // Absorb representation error so that 0.05 * 100 gives 5, not 6.
  return static_cast<std::size_t>(std::ceil(exact - 1e-9 * exact));
}

SplitDataset split(const RecordSet& records, double test_fraction,
                   std::uint64_t seed) {
  if (records.empty()) fail(ErrorKind::kData, "cannot split an empty dataset");

  struct Pair {
    const std::string* user;
    const std::string* item;
    std::vector<std::string> tags;
  };
  LabelMap users, items;
  std::map<std::pair<Index, Index>, std::size_t> pair_index;
  std::vector<Pair> pairs;
  for (const auto& r : records) {
    const auto key = std::pair{users.intern(r.user), items.intern(r.item)};
    auto [it, inserted] = pair_index.try_emplace(key, pairs.size());
    if (inserted) pairs.push_back({&r.user, &r.item, {}});
    auto& tags = pairs[it->second].tags;
    for (const auto& t : r.tags)
      if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
  }

  const std::size_t total = pairs.size();
  const std::size_t k = held_out_count(total, test_fraction);
  if (k >= total)
    fail(ErrorKind::kConfig, "test fraction " + std::to_string(test_fraction) +
                                 " holds out all " + std::to_string(total) +
                                 " pairs");

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i)
    std::swap(order[i], order[i + uniform_below(rng, total - i)]);
  std::vector<bool> is_test(total, false);
  for (std::size_t i = 0; i < k; ++i) is_test[order[i]] = true;

  GraphBuilder builder;
  for (std::size_t p = 0; p < total; ++p)
    if (!is_test[p]) builder.add(*pairs[p].user, *pairs[p].item, pairs[p].tags);

  SplitDataset out{std::move(builder).build(), {}, {}, {}, k, seed};
  out.test_sets.resize(out.training.n_users());
  out.pairs.reserve(total);
  for (std::size_t p = 0; p < total; ++p) {
    out.pairs.push_back({*pairs[p].user, *pairs[p].item, is_test[p]});
    if (!is_test[p]) continue;
    const auto u = out.training.users().find(*pairs[p].user);
    const auto i = out.training.items().find(*pairs[p].item);
    if (!u || !i) {
      ++out.orphans.dropped_pairs;
      out.orphans.missing_users += !u;
      out.orphans.missing_items += !i;
      continue;
    }
    out.test_sets[*u].push_back(*i);
  }
  for (auto& s : out.test_sets) std::sort(s.begin(), s.end());
  return out;
}

std::size_t SplitDataset::retained_test_pairs() const {
  std::size_t n = 0;
  for (const auto& s : test_sets) n += s.size();
  return n;
}

std::size_t SplitDataset::users_with_tests() const {
  return static_cast<std::size_t>(std::count_if(
      test_sets.begin(), test_sets.end(), [](const auto& s) { return !s.empty(); }));
}

std::uint64_t SplitDataset::digest() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  feed(training.n_users());
  feed(training.n_items());
  feed(training.n_tags());
  for (Index u = 0; u < training.n_users(); ++u) {
    feed(~std::uint64_t{0});
    for (Index i : training.user_items(u)) feed(i);
    feed(~std::uint64_t{1});
    for (Index i : test_sets[u]) feed(i);
  }
  for (Index i = 0; i < training.n_items(); ++i) {
    feed(~std::uint64_t{2});
    for (Index t : training.item_tags(i)) feed(t);
  }
  return h;
}

void write_manifest(std::ostream& out, const SplitDataset& split) {
  for (const auto& p : split.pairs)
    out << p.user << '\t' << p.item << '\t' << (p.test ? "test" : "train") << '\n';
}

void write_manifest(const std::filesystem::path& path,
                    const SplitDataset& split) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  write_manifest(out, split);
  out.flush();
  if (!out) fail(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace tagdiff
