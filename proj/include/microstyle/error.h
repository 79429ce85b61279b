#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace microstyle {

// Every data error raised by the toolkit carries one of these kinds. The CLI
// echoes ErrorName(kind) verbatim in its machine-readable error line.
enum class ErrorKind {
  kIo,
  kInvalidConfig,
  kMalformedLine,
  kDuplicateId,
  kEmptyText,
  kUnknownId,
  kMissingScore,
  kScoreOutOfRange,
  kUnscoredRecord,
  kUnknownStyle,
  kAllCombinationsEmpty,
  kInfeasibleTotal,
  kTargetExceedsAvailable,
  kNoCandidates,
  kUnselectedPair,
  kMissingFluency,
  kStyleMismatch,
  kSeparatorInText,
  kMalformedPrompt,
  kEmptyInput,
  kLengthMismatch,
  kEmptyCorpus,
  kDimensionMismatch,
  kZeroVector,
  kEmptyAfterFilter,
  kMissingMetric,
  kMissingEmbedding,
};

std::string_view ErrorName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail);

  ErrorKind kind() const { return kind_; }
  const std::string &detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace microstyle
