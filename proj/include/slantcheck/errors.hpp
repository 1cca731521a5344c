#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slantcheck {

/// Malformed or inconsistent user input (spec text, CLI values). Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error with a 1-based source position and the tokens that would have been accepted.
class ParseError : public InputError {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, std::string found);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

/// A function evaluated outside its domain (log of non-positive, division by zero, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string subexpression);
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

/// Rank loss, eigen-solver failure and other numeric breakdowns. Maps to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The immersion violates a framework invariant at one or more points.
class ImmersionError : public std::runtime_error {
 public:
  enum class Kind { not_immersion, xi_not_tangent };
  ImmersionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace slantcheck
