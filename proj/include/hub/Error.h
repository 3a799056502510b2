#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hub {

// Base of every error the hub raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A syntax error in some textual input, with a 1-based position. Line 0
// means no position is known.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    std::string pos = "line " + std::to_string(line);
    if (column > 0) pos += ", column " + std::to_string(column);
    return pos + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace hub
