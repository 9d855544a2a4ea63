#include "tagdiff/error.hpp"

namespace tagdiff {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kData: return "data error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kContract: return "contract error";
    case ErrorKind::kBounds: return "bounds error";
    case ErrorKind::kUnscorable: return "unscorable user";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kInternal: return "internal error";
  }
  return "unknown error";
}

}  // namespace tagdiff
