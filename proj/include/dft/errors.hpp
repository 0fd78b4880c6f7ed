#pragma once

#include <stdexcept>
#include <string>

namespace dft {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingVariable : Error {
  explicit MissingVariable(const std::string& name)
      : Error("valuation has no entry for variable '" + name + "'"), variable(name) {}
  std::string variable;
};

struct ArityMismatch : Error {
  using Error::Error;
};

struct BadVoteThreshold : Error {
  using Error::Error;
};

struct TooManyVariables : Error {
  TooManyVariables(std::size_t count, std::size_t bound)
      : Error("exact equivalence limited to " + std::to_string(bound) +
              " variables, got " + std::to_string(count)),
        count(count), bound(bound) {}
  std::size_t count;
  std::size_t bound;
};

struct UnsatisfiableConditions : Error {
  using Error::Error;
};

struct BudgetExhausted : Error {
  using Error::Error;
};

struct SelfCheckFailed : Error {
  using Error::Error;
};

struct NotCanonical : Error {
  using Error::Error;
};

struct SyntaxError : Error {
  SyntaxError(int line, int col, const std::string& expected)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
              ": expected " + expected),
        line(line), col(col), expected(expected) {}
  int line;
  int col;
  std::string expected;
};

struct DuplicateDefinition : Error {
  using Error::Error;
};

struct UnsupportedSharing : Error {
  using Error::Error;
};

struct StateBudgetExceeded : Error {
  StateBudgetExceeded(std::size_t budget, std::size_t explored)
      : Error("state budget of " + std::to_string(budget) + " exceeded after exploring " +
              std::to_string(explored) + " states"),
        budget(budget), explored(explored) {}
  std::size_t budget;
  std::size_t explored;
};

struct ZeroTrials : Error {
  using Error::Error;
};

}  // namespace dft
