#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace randsub {

enum class ErrorKind {
    Syntax,
    UnknownLetter,
    BadProbability,
    EmptyImage,
    BudgetExceeded,
    EmptySubshift,
    NotPrimitive,
    NotPrimitiveMatrix,
    NoConvergence,
    LengthOrder,
    WordTooShort,
    DegenerateRule,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind drives CLI exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace randsub
