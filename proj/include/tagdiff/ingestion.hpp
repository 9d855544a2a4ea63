#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "tagdiff/record.hpp"

namespace tagdiff {

/// Reads the interaction wire format: one `user<TAB>item<TAB>tag,tag,...`
/// entry per line, `#` comments and blank lines skipped. Throws ParseError
/// with the 1-based line number on malformed input.
RecordSet parse_interactions(std::istream& in);
RecordSet read_interactions(const std::filesystem::path& path);

/// Writes records back in the same format, one per line, in order.
void write_interactions(std::ostream& out, const RecordSet& records);
void write_interactions(const std::filesystem::path& path,
                        const RecordSet& records);

/// Dataset cleaning thresholds. Defaults:
/// items need two collecting users and one tag, users need one item, and
/// tags attached to a single item are dropped.
struct PurificationPolicy {
  std::size_t min_users_per_item = 2;
  std::size_t min_items_per_user = 1;
  std::size_t min_tags_per_item = 1;
  bool drop_singleton_tags = true;
};

struct PurificationPass {
  std::size_t removed_tags = 0;
  std::size_t removed_items = 0;
  std::size_t removed_users = 0;
  std::size_t removed_records = 0;

  bool empty() const noexcept {
    return removed_tags == 0 && removed_items == 0 && removed_users == 0 &&
           removed_records == 0;
  }
};

struct PurificationStats {
  std::vector<PurificationPass> passes;  // last pass is always the empty one
  PurificationPass total() const;
};

struct PurificationResult {
  RecordSet records;
  PurificationStats stats;
};

/// Applies the policy repeatedly until no rule fires. Surviving records keep
/// their input order; removed tags are stripped from the records carrying
/// them. Throws kData if nothing survives.
PurificationResult purify(const RecordSet& records,
                          const PurificationPolicy& policy = {});

}  // namespace tagdiff
