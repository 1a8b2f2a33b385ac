#pragma once

#include <stdexcept>
#include <string>

namespace tempocap {

// Broad failure classes, mirrored one-to-one by the C API status codes.
enum class ErrorKind {
  invalid_argument,  // caller violated a precondition
  parse,             // malformed input text or JSON
  io,                // file could not be read or written
  domain,            // well-formed input violating a domain invariant
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, int line = 0, int column = 0)
      : std::runtime_error(format(message, line, column)),
        kind_(kind),
        line_(line),
        column_(column) {}

  ErrorKind kind() const { return kind_; }

  // 1-based input location for parse errors; 0 when not applicable.
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    out += ": " + message;
    return out;
  }

  ErrorKind kind_;
  int line_;
  int column_;
};

}  // namespace tempocap
