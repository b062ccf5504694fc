#include "recnet/error.hpp"

namespace recnet {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedRow: return "MalformedRow";
    case ParseErrorKind::kMissingHeader: return "MissingHeader";
    case ParseErrorKind::kDuplicatePoi: return "DuplicatePoi";
    case ParseErrorKind::kUnknownSector: return "UnknownSector";
    case ParseErrorKind::kNegativeIncome: return "NegativeIncome";
    case ParseErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ParseErrorKind::kSelfLoop: return "SelfLoop";
    case ParseErrorKind::kNegativeWeight: return "NegativeWeight";
    case ParseErrorKind::kBadState: return "BadState";
    case ParseErrorKind::kWeekOutOfRange: return "WeekOutOfRange";
    case ParseErrorKind::kMissingCell: return "MissingCell";
    case ParseErrorKind::kDuplicateCell: return "DuplicateCell";
  }
  return "Unknown";
}

namespace {

std::string format_message(ParseErrorKind kind, std::size_t line,
                           const std::string& detail) {
  std::string msg = to_string(kind);
  if (line > 0) msg += " at line " + std::to_string(line);
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line,
                       const std::string& detail)
    : ValidationError(format_message(kind, line, detail)),
      kind_(kind),
      line_(line) {}

}  // namespace recnet
