#pragma once

#include <stdexcept>
#include <string>

namespace teamlogic {

// Input text that does not conform to the formula, team file, or QBF grammar.
// Carries a 1-based position when the lexer knows one (0 means "unknown").
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(message, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

// A request exceeded an explicit size budget (team width, split size,
// brute-force variable count, ...). The message names the budget.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace teamlogic
