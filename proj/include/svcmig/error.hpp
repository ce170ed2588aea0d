#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svcmig {

enum class Errc {
    InvalidProbability,
    InvalidBounds,
    InvalidDiscount,
    InvalidCost,
    InvalidThresholds,
    ForbiddenAction,
    OutOfRange,
    SingularMatrix,
    TooLarge,
    InvalidStart,
    UnknownRule,
    Usage,
    Io,
    Solver,
};

std::string_view to_string(Errc code) noexcept;

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace svcmig
