#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elearn {

enum class ErrorCode {
  InvalidEncoding,
  ParseError,
  IoError,
  InvalidArgument,
  EmptyCorpus,
  EmptyVocabulary,
  EmptyDocument,
  EmptyConcepts,
  DivisionByZero,
  ShapeMismatch,
  NonFinite,
  NoConvergence,
  RankOutOfBounds,
  UndefinedSimilarity,
  OutOfRange,
  TooFewPoints,
  MissingSimilarity,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::EmptyConcepts: return "EmptyConcepts";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::RankOutOfBounds: return "RankOutOfBounds";
    case ErrorCode::UndefinedSimilarity: return "UndefinedSimilarity";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::MissingSimilarity: return "MissingSimilarity";
  }
  return "Unknown";
}

/// Every failure raised by the library. The message is prefixed with the
/// code name so it survives being printed as a plain `what()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace elearn
