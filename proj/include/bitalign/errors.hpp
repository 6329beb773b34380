#pragma once

#include <stdexcept>
#include <string>

namespace bitalign {

/// Caller violated a documented precondition (bad width, k > m, empty input...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No distance d <= k_w produced a match for a traceback window.
class WindowUnalignable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The windowed driver ran out of text with more than k pattern symbols left.
class AlignmentFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Traceback found no valid case at a step; the intermediate store and the
/// reported window distance disagree.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace bitalign
