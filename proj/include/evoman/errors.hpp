#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evoman {

/// Stepping a finished match, or any other call made in the wrong state.
class IllegalStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A controller failed mid-match. Distinct from losing the match.
class MatchAbortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed genome, replay or config input. `line` is 1-based, 0 when the
/// input is not line oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace evoman
