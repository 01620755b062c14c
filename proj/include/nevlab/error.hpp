#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nevlab {

enum class ErrorKind {
    DimensionMismatch,
    DegenerateFamily,
    SizeCap,
    ZeroOnContour,
    NonConvergent,
    CurveInsideDivisor,
    CurveTooSmall,
    Precondition,
    GeneralPosition,
    RetryExhausted,
    InsufficientPoints,
    DegreeCap,
    Schema,
    Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind so the
// CLI can map it onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

} // namespace nevlab
