#include "tagdiff/ingestion.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>

#include "tagdiff/error.hpp"
#include "tagdiff/graph.hpp"

namespace tagdiff {
namespace {

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

RecordSet parse_interactions(std::istream& in) {
  RecordSet records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;

    const auto fields = split_on(view, '\t');
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    if (fields[0].empty()) throw ParseError(line_no, "empty user field");
    if (fields[1].empty()) throw ParseError(line_no, "empty item field");
    if (fields[0].find(',') != std::string_view::npos ||
        fields[1].find(',') != std::string_view::npos)
      throw ParseError(line_no, "user and item labels must not contain ','");

    InteractionRecord record{std::string(fields[0]), std::string(fields[1]), {}};
    if (!fields[2].empty()) {
      for (auto tag : split_on(fields[2], ',')) {
        if (tag.empty()) throw ParseError(line_no, "empty tag in tag list");
        if (std::find(record.tags.begin(), record.tags.end(), tag) ==
            record.tags.end())
          record.tags.emplace_back(tag);
      }
    }
    records.push_back(std::move(record));
  }
  if (in.bad()) fail(ErrorKind::kIo, "read failure");
  return records;
}

RecordSet read_interactions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  return parse_interactions(in);
}

void write_interactions(std::ostream& out, const RecordSet& records) {
  for (const auto& r : records) {
    out << r.user << '\t' << r.item << '\t';
    for (std::size_t k = 0; k < r.tags.size(); ++k) {
      if (k) out << ',';
      out << r.tags[k];
    }
    out << '\n';
  }
}

void write_interactions(const std::filesystem::path& path,
                        const RecordSet& records) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  write_interactions(out, records);
  out.flush();
  if (!out) fail(ErrorKind::kIo, "write failed: " + path.string());
}

PurificationPass PurificationStats::total() const {
  PurificationPass t;
  for (const auto& p : passes) {
    t.removed_tags += p.removed_tags;
    t.removed_items += p.removed_items;
    t.removed_users += p.removed_users;
    t.removed_records += p.removed_records;
  }
  return t;
}

PurificationResult purify(const RecordSet& records,
                          const PurificationPolicy& policy) {
  struct Row {
    Index user, item;
    std::vector<Index> tags;
    bool alive = true;
  };
  LabelMap users, items, tags;
  std::vector<Row> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    Row row{users.intern(r.user), items.intern(r.item), {}, true};
    for (const auto& t : r.tags) row.tags.push_back(tags.intern(t));
    rows.push_back(std::move(row));
  }

  // Distinct (row-key, value) counting via sort + unique.
  auto distinct_counts = [](std::vector<std::pair<Index, Index>>& pairs,
                            std::size_t size) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<std::size_t> counts(size, 0);
    for (const auto& p : pairs) ++counts[p.first];
    return counts;
  };

  auto presence = [&] {
    std::vector<bool> u(users.size()), i(items.size()), t(tags.size());
    for (const auto& row : rows) {
      if (!row.alive) continue;
      u[row.user] = true;
      i[row.item] = true;
      for (Index tag : row.tags) t[tag] = true;
    }
    return std::tuple{std::move(u), std::move(i), std::move(t)};
  };
  auto vanished = [](const std::vector<bool>& before,
                     const std::vector<bool>& after) {
    std::size_t n = 0;
    for (std::size_t k = 0; k < before.size(); ++k) n += before[k] && !after[k];
    return n;
  };

  PurificationStats stats;
  for (;;) {
    PurificationPass pass;
    auto [users_before, items_before, tags_before] = presence();
    std::vector<std::pair<Index, Index>> pairs;

    if (policy.drop_singleton_tags) {
      for (const auto& row : rows)
        if (row.alive)
          for (Index t : row.tags) pairs.emplace_back(t, row.item);
      const auto items_per_tag = distinct_counts(pairs, tags.size());
      std::vector<bool> drop(tags.size());
      bool any = false;
      for (Index t = 0; t < tags.size(); ++t)
        if (items_per_tag[t] == 1) any = drop[t] = true;
      if (any)
        for (auto& row : rows)
          std::erase_if(row.tags, [&](Index t) { return drop[t]; });
    }

    pairs.clear();
    for (const auto& row : rows)
      if (row.alive) pairs.emplace_back(row.item, row.user);
    const auto users_per_item = distinct_counts(pairs, items.size());
    pairs.clear();
    for (const auto& row : rows)
      if (row.alive)
        for (Index t : row.tags) pairs.emplace_back(row.item, t);
    const auto tags_per_item = distinct_counts(pairs, items.size());
    for (auto& row : rows) {
      if (row.alive && (users_per_item[row.item] < policy.min_users_per_item ||
                        tags_per_item[row.item] < policy.min_tags_per_item)) {
        row.alive = false;
        ++pass.removed_records;
      }
    }

    pairs.clear();
    for (const auto& row : rows)
      if (row.alive) pairs.emplace_back(row.user, row.item);
    const auto items_per_user = distinct_counts(pairs, users.size());
    for (auto& row : rows) {
      if (row.alive && items_per_user[row.user] < policy.min_items_per_user) {
        row.alive = false;
        ++pass.removed_records;
      }
    }

    auto [users_after, items_after, tags_after] = presence();
    pass.removed_users = vanished(users_before, users_after);
    pass.removed_items = vanished(items_before, items_after);
    pass.removed_tags = vanished(tags_before, tags_after);
    stats.passes.push_back(pass);
    if (pass.empty()) break;
  }

  PurificationResult result;
  result.stats = std::move(stats);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!rows[k].alive) continue;
    InteractionRecord out{records[k].user, records[k].item, {}};
    for (Index t : rows[k].tags) out.tags.push_back(tags.label(t));
    result.records.push_back(std::move(out));
  }
  if (result.records.empty())
    fail(ErrorKind::kData, "dataset fully purged: no record satisfies the "
                           "purification policy");
  return result;
}

}  // namespace tagdiff
