#include "mx3/error.hpp"

namespace mx3 {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader: return "malformed header";
    case ParseErrorKind::kMalformedLine: return "malformed line";
    case ParseErrorKind::kLiteralOutOfRange: return "literal out of range";
    case ParseErrorKind::kNegativeWeight: return "negative weight";
    case ParseErrorKind::kUnknownPredicate: return "unknown predicate id";
    case ParseErrorKind::kCountMismatch: return "constraint count mismatch";
    case ParseErrorKind::kZeroTotalWeight: return "W must be positive";
  }
  return "parse error";
}

}  // namespace mx3
