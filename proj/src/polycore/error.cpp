#include "nevlab/error.hpp"

namespace nevlab {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::DegenerateFamily: return "degenerate-family";
    case ErrorKind::SizeCap: return "size-cap";
    case ErrorKind::ZeroOnContour: return "zero-on-contour";
    case ErrorKind::NonConvergent: return "non-convergent";
    case ErrorKind::CurveInsideDivisor: return "curve-inside-divisor";
    case ErrorKind::CurveTooSmall: return "curve-too-small";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::GeneralPosition: return "general-position";
    case ErrorKind::RetryExhausted: return "retry-exhausted";
    case ErrorKind::InsufficientPoints: return "insufficient-points";
    case ErrorKind::DegreeCap: return "degree-cap";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace nevlab
