#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mx3 {

enum class ErrorCode {
  kUsage = 1,
  kValidation = 2,  // includes desk-cap violations
  kNumerical = 3,
};

// Base for every error raised by the library. The code doubles as the CLI
// exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCode::kValidation, what) {}
};

class CapError : public Error {
 public:
  explicit CapError(const std::string& what)
      : Error(ErrorCode::kValidation, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCode::kNumerical, what) {}
};

enum class ParseErrorKind {
  kMalformedHeader,
  kMalformedLine,
  kLiteralOutOfRange,
  kNegativeWeight,
  kUnknownPredicate,
  kCountMismatch,
  kZeroTotalWeight,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
      : Error(ErrorCode::kValidation,
              "line " + std::to_string(line) + ": " + to_string(kind) + ": " + detail),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace mx3
