#ifndef SCOPEFORGE_ERRORS_HPP
#define SCOPEFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scopeforge {

// Every failure carries a stable code so the CLI can map it to an exit
// status and tests can match on the class of error rather than the text.
enum class ErrorCode {
  TopMismatch,
  InconsistentStore,
  DuplicateIntro,
  NoMatchingClause,
  SchemaError,
  InconsistentTemplate,
  ValenceMismatch,
  SaturationError,
  NoMatchingSlash,
  NoParse,
  NotUnderspecified,
  UnresolvedSlot,
  ScaleExceeded,
  GenNotEvaluable,
  ArityMismatch,
  ModelError,
  FormatError,
  DirectiveError,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  const char* codeName() const {
    switch (code_) {
      case ErrorCode::TopMismatch: return "TopMismatch";
      case ErrorCode::InconsistentStore: return "InconsistentStore";
      case ErrorCode::DuplicateIntro: return "DuplicateIntro";
      case ErrorCode::NoMatchingClause: return "NoMatchingClause";
      case ErrorCode::SchemaError: return "SchemaError";
      case ErrorCode::InconsistentTemplate: return "InconsistentTemplate";
      case ErrorCode::ValenceMismatch: return "ValenceMismatch";
      case ErrorCode::SaturationError: return "SaturationError";
      case ErrorCode::NoMatchingSlash: return "NoMatchingSlash";
      case ErrorCode::NoParse: return "NoParse";
      case ErrorCode::NotUnderspecified: return "NotUnderspecified";
      case ErrorCode::UnresolvedSlot: return "UnresolvedSlot";
      case ErrorCode::ScaleExceeded: return "ScaleExceeded";
      case ErrorCode::GenNotEvaluable: return "GenNotEvaluable";
      case ErrorCode::ArityMismatch: return "ArityMismatch";
      case ErrorCode::ModelError: return "ModelError";
      case ErrorCode::FormatError: return "FormatError";
      case ErrorCode::DirectiveError: return "DirectiveError";
      case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
  }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace scopeforge

#endif  // SCOPEFORGE_ERRORS_HPP
