#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recnet {

// Input data rejected by a loader or a precondition on user-supplied values.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

enum class ParseErrorKind {
  kMalformedRow,
  kMissingHeader,
  kDuplicatePoi,
  kUnknownSector,
  kNegativeIncome,
  kDuplicateEdge,
  kSelfLoop,
  kNegativeWeight,
  kBadState,
  kWeekOutOfRange,
  kMissingCell,
  kDuplicateCell,
};

const char* to_string(ParseErrorKind kind);

// Strict-parse failure carrying the offending file line (1-based, header is
// line 1; 0 when the error is not tied to a single line).
class ParseError : public ValidationError {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace recnet
