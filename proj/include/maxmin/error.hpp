#pragma once

/**
 * @file error.hpp
 * @brief Error codes shared by every maxmin module.
 */

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxmin {

enum class ErrorCode {
    InvalidBase,
    DigitOutOfRange,
    BaseMismatch,
    ZeroPolynomial,
    ZeroDivisor,
    DegreeTooLarge,
    LevelOutOfRange,
    InvalidDigitMap,
    BudgetExceeded,
    WindowTooShort,
    InsufficientSupport,
    InvalidArgument,
    ParseError,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidBase: return "InvalidBase";
        case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
        case ErrorCode::BaseMismatch: return "BaseMismatch";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::ZeroDivisor: return "ZeroDivisor";
        case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
        case ErrorCode::InvalidDigitMap: return "InvalidDigitMap";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::WindowTooShort: return "WindowTooShort";
        case ErrorCode::InsufficientSupport: return "InsufficientSupport";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Domain error raised by library operations; `code()` names the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace maxmin
