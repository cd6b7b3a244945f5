#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swanson {

enum class ErrorKind {
    MassSingularity,
    DimensionMismatch,
    NoConvergence,
    Overflow,
    ZeroTheta,
    DegenerateDirection,
    ExceptionalPoint,
    DivisionByZero,
    TanSingularity,
    UntrustedSupport,
    SolverBreakdown,
    GridMismatch,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// True for failures of the mathematics (singular points, non-convergence),
/// false for misuse of the API (mismatched shapes, bad arguments).
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised while reading scenario descriptors and command-line configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace swanson
