#pragma once

#include <stdexcept>
#include <string>

namespace plageval {

/// Base of every error raised by the library. `code()` is a stable
/// machine-readable name (e.g. "LexError", "ZeroVector") that the CLI and
/// the survey service forward verbatim to their callers.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Lexical failure with a 1-based source position.
class LexError : public Error {
 public:
  LexError(std::string code, const std::string& message, int line, int column)
      : Error(std::move(code), message), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace plageval
