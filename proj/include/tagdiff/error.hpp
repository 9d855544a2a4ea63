#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tagdiff {

enum class ErrorKind {
  kConfig,      // bad parameters (fraction out of range, L = 0, ...)
  kData,        // input data unusable (empty, fully purged, unknown label)
  kParse,       // malformed input line
  kContract,    // caller violated an operation precondition
  kBounds,      // index out of range
  kUnscorable,  // user has an empty training profile
  kIo,          // file could not be opened or written
  kInternal,    // invariant violation inside the library
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace tagdiff
