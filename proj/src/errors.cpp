#include "swanson/errors.hpp"

namespace swanson {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MassSingularity: return "MassSingularity";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::ZeroTheta: return "ZeroTheta";
        case ErrorKind::DegenerateDirection: return "DegenerateDirection";
        case ErrorKind::ExceptionalPoint: return "ExceptionalPoint";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::TanSingularity: return "TanSingularity";
        case ErrorKind::UntrustedSupport: return "UntrustedSupport";
        case ErrorKind::SolverBreakdown: return "SolverBreakdown";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_numerical(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch:
        case ErrorKind::GridMismatch:
        case ErrorKind::InvalidArgument: return false;
        default: return true;
    }
}

}  // namespace swanson
