#include "moralswf/error.hpp"

namespace moralswf {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::CredenceOutOfRange: return "CredenceOutOfRange";
    case ErrorCode::CredenceSumNotOne: return "CredenceSumNotOne";
    case ErrorCode::DuplicateTheoryId: return "DuplicateTheoryId";
    case ErrorCode::DuplicateActionId: return "DuplicateActionId";
    case ErrorCode::EmptyActionSet: return "EmptyActionSet";
    case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::MissingEvaluation: return "MissingEvaluation";
    case ErrorCode::EmptyRestriction: return "EmptyRestriction";
    case ErrorCode::UnknownTheoryId: return "UnknownTheoryId";
    case ErrorCode::CredenceMassExceeded: return "CredenceMassExceeded";
    case ErrorCode::ActionSetMismatch: return "ActionSetMismatch";
    case ErrorCode::UnknownAction: return "UnknownAction";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotProperSubset: return "NotProperSubset";
    case ErrorCode::TooManyTheories: return "TooManyTheories";
    case ErrorCode::TooFewActions: return "TooFewActions";
    case ErrorCode::TargetIsUniqueMaximizer: return "TargetIsUniqueMaximizer";
    case ErrorCode::BadCredence: return "BadCredence";
    case ErrorCode::BadCredencePair: return "BadCredencePair";
    case ErrorCode::CredenceTooHigh: return "CredenceTooHigh";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::NumberFormat: return "NumberFormatError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

ScenarioError::ScenarioError(ErrorCode code, const std::string& message, std::size_t line,
                             std::size_t column, ErrorCode inner)
    : Error(code, message), line_(line), column_(column), inner_(inner) {}

}  // namespace moralswf
