#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topiccloud {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input syntax. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Every word was filtered out before placement.
class EmptyCloudError : public Error {
public:
  EmptyCloudError() : Error("empty cloud") {}
  explicit EmptyCloudError(const std::string& detail) : Error("empty cloud: " + detail) {}
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace topiccloud
