#include "microstyle/error.h"

namespace microstyle {

std::string_view ErrorName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kMalformedLine: return "MalformedLine";
    case ErrorKind::kDuplicateId: return "DuplicateId";
    case ErrorKind::kEmptyText: return "EmptyText";
    case ErrorKind::kUnknownId: return "UnknownId";
    case ErrorKind::kMissingScore: return "MissingScore";
    case ErrorKind::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorKind::kUnscoredRecord: return "UnscoredRecord";
    case ErrorKind::kUnknownStyle: return "UnknownStyle";
    case ErrorKind::kAllCombinationsEmpty: return "AllCombinationsEmpty";
    case ErrorKind::kInfeasibleTotal: return "InfeasibleTotal";
    case ErrorKind::kTargetExceedsAvailable: return "TargetExceedsAvailable";
    case ErrorKind::kNoCandidates: return "NoCandidates";
    case ErrorKind::kUnselectedPair: return "UnselectedPair";
    case ErrorKind::kMissingFluency: return "MissingFluency";
    case ErrorKind::kStyleMismatch: return "StyleMismatch";
    case ErrorKind::kSeparatorInText: return "SeparatorInText";
    case ErrorKind::kMalformedPrompt: return "MalformedPrompt";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kEmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorKind::kMissingMetric: return "MissingMetric";
    case ErrorKind::kMissingEmbedding: return "MissingEmbedding";
  }
  return "UnknownError";
}

Error::Error(ErrorKind kind, std::string detail)
    : std::runtime_error(std::string(ErrorName(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)) {}

}  // namespace microstyle
