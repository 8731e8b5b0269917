#include "crossing/error.hpp"

namespace crossing {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::InvalidPhase: return "InvalidPhase";
    case ErrorCode::NoFiniteContact: return "NoFiniteContact";
    case ErrorCode::ZeroGradient: return "ZeroGradient";
    case ErrorCode::DegenerateS: return "DegenerateS";
    case ErrorCode::TransversalUnsupported: return "TransversalUnsupported";
    case ErrorCode::NotContractive: return "NotContractive";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::WindowInsideSupport: return "WindowInsideSupport";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::TurningPointInRange: return "TurningPointInRange";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::Schema: return "SchemaError";
    case ErrorCode::Io: return "IoError";
  }
  return "UnknownError";
}

}  // namespace crossing
