#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace secset {

/// Malformed input: bad file contents, invalid vertex ids, violated preconditions.
/// `line()` is 1-based, or 0 when the error is not tied to a source line.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A construction or operation refused because its input is outside the shape it is defined for.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input is negative for reasons visible before any search (e.g. more necessary vertices than k).
class TriviallyNegative : public Refusal {
 public:
  using Refusal::Refusal;
};

/// A configured resource cap (candidate count, subset size, variable count, output size) would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace secset
