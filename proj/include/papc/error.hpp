#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace papc {

enum class ErrorCode {
  IndexOutOfRange,
  DuplicateBlock,
  DuplicatePointInBlock,
  IsolatedPoint,
  NotAPap,
  NotAPlane,
  NotASquare,
  UnsupportedOrder,
  TooLarge,
  RetriesExhausted,
  PreconditionViolated,
  HypothesesNotMet,
  ResultNotADesign,
  TooManyClasses,
  NotEquivalence,
  NotCompletable,
  BudgetExhausted,
  InvalidInput,
  InvalidWitness,
  DerivedNotCompletable,
  ConditionsNotMet,
  GlueInconsistent,
  NoClauseSatisfied,
  ParseError,
  NonCanonicalInput,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateBlock: return "DuplicateBlock";
    case ErrorCode::DuplicatePointInBlock: return "DuplicatePointInBlock";
    case ErrorCode::IsolatedPoint: return "IsolatedPoint";
    case ErrorCode::NotAPap: return "NotAPap";
    case ErrorCode::NotAPlane: return "NotAPlane";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorCode::ResultNotADesign: return "ResultNotADesign";
    case ErrorCode::TooManyClasses: return "TooManyClasses";
    case ErrorCode::NotEquivalence: return "NotEquivalence";
    case ErrorCode::NotCompletable: return "NotCompletable";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::DerivedNotCompletable: return "DerivedNotCompletable";
    case ErrorCode::ConditionsNotMet: return "ConditionsNotMet";
    case ErrorCode::GlueInconsistent: return "GlueInconsistent";
    case ErrorCode::NoClauseSatisfied: return "NoClauseSatisfied";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonCanonicalInput: return "NonCanonicalInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace papc
