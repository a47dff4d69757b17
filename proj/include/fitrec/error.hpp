#pragma once

#include <stdexcept>
#include <string>

namespace fitrec {

enum class ErrorCode {
    invalid_argument,
    parse,
    io,
    degenerate,     // boundary solution (z = 0) or metric undefined
    infeasible,     // constraint cannot be met by any finite ensemble
    not_converged,
    internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception type thrown by every fallible operation in the library. The C
/// API maps `code()` onto its status enum one-to-one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace fitrec
