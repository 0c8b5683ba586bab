#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kempner {

enum class ErrorCode {
    QuotientTooSmall,
    EmptyExplicitList,
    BoundHintViolated,
    NonPositiveInput,
    DigitOutOfRange,
    ZeroLeadingDigit,
    EmptyForbiddenSet,
    ForbiddenSetNotProper,
    IndexNotInSet,
    InvalidIndexSet,
    BitOutOfRange,
    BudgetExceeded,
    MissingBoundHint,
    SetIsFinite,
    SetFinitenessUnknown,
    InputOutOfRange,
    RangeTooLarge,
    ConfigInvalid,
    UnknownSubcommand,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this exception; the code
/// is stable and the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace kempner
