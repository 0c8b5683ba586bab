#include "kempner/error.hpp"

namespace kempner {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::QuotientTooSmall: return "QuotientTooSmall";
        case ErrorCode::EmptyExplicitList: return "EmptyExplicitList";
        case ErrorCode::BoundHintViolated: return "BoundHintViolated";
        case ErrorCode::NonPositiveInput: return "NonPositiveInput";
        case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
        case ErrorCode::ZeroLeadingDigit: return "ZeroLeadingDigit";
        case ErrorCode::EmptyForbiddenSet: return "EmptyForbiddenSet";
        case ErrorCode::ForbiddenSetNotProper: return "ForbiddenSetNotProper";
        case ErrorCode::IndexNotInSet: return "IndexNotInSet";
        case ErrorCode::InvalidIndexSet: return "InvalidIndexSet";
        case ErrorCode::BitOutOfRange: return "BitOutOfRange";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::MissingBoundHint: return "MissingBoundHint";
        case ErrorCode::SetIsFinite: return "SetIsFinite";
        case ErrorCode::SetFinitenessUnknown: return "SetFinitenessUnknown";
        case ErrorCode::InputOutOfRange: return "InputOutOfRange";
        case ErrorCode::RangeTooLarge: return "RangeTooLarge";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::UnknownSubcommand: return "UnknownSubcommand";
    }
    return "Unknown";
}

}  // namespace kempner
