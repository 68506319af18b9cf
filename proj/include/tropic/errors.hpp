#pragma once

#include <stdexcept>
#include <string>

namespace tropic {

// Malformed input text or document. line/col are 1-based when known, 0 otherwise.
struct ParseError : std::runtime_error {
  int line;
  int col;
  explicit ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
      : std::runtime_error(msg), line(line_), col(col_) {}
};

// A computed invariant failed. Indicates a bug, not bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Well-formed input outside the supported configuration space.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tropic
