#pragma once

#include <stdexcept>
#include <string>

namespace lrsynth {

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, size_t line = 0, size_t column = 0)
        : std::runtime_error(format(message, line, column)), line_(line), column_(column) {}

    size_t line() const { return line_; }
    size_t column() const { return column_; }

  private:
    static std::string format(const std::string& message, size_t line, size_t column) {
        if (line == 0) return message;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
    }

    size_t line_;
    size_t column_;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace lrsynth
