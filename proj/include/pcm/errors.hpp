#pragma once

#include <stdexcept>
#include <string>

namespace pcm {

// Structurally invalid input: bad partition, degenerate branch, bad config.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A budget was exceeded. `level` is the depth or word length reached.
struct TruncationError : std::runtime_error {
  int level;
  TruncationError(const std::string& what, int lvl) : std::runtime_error(what), level(lvl) {}
};

// Malformed scene text. `field` names the offending key when known.
struct ParseError : std::runtime_error {
  std::string field;
  int line;
  ParseError(const std::string& what, std::string fld, int ln)
      : std::runtime_error(what), field(std::move(fld)), line(ln) {}
};

}  // namespace pcm
