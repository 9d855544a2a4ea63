#pragma once

#include <string>
#include <vector>

namespace tagdiff {

/// One raw entry `{user, item, tag_1 ... tag_h}`. `tags` may be empty.
struct InteractionRecord {
  std::string user;
  std::string item;
  std::vector<std::string> tags;

  friend bool operator==(const InteractionRecord&,
                         const InteractionRecord&) = default;
};

using RecordSet = std::vector<InteractionRecord>;

}  // namespace tagdiff
