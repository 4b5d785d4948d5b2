#pragma once

#include <stdexcept>
#include <string>

namespace adhm {

// Error kinds surfaced through the CLI and the test suites. Every throwing
// operation documents which kinds it can raise.
enum class ErrorKind {
    DimensionMismatch,
    Inconsistent,
    CommonEigenvalue,
    NotSplitOverBase,
    NotStable,
    DegenerateFrame,
    PoleAtZero,
    ClosedFormMismatch,
    ContainmentViolation,
    InvariantViolation,
    GenericityFailure,
    SetMismatch,
    MismatchWithReference,
    Unsupported,
    Parse,
};

inline const char* error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::CommonEigenvalue: return "CommonEigenvalue";
    case ErrorKind::NotSplitOverBase: return "NotSplitOverBase";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::PoleAtZero: return "PoleAtZero";
    case ErrorKind::ClosedFormMismatch: return "ClosedFormMismatch";
    case ErrorKind::ContainmentViolation: return "ContainmentViolation";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::SetMismatch: return "SetMismatch";
    case ErrorKind::MismatchWithReference: return "MismatchWithReference";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg)
{
    throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg)
{
    if (!cond)
        raise(kind, msg);
}

} // namespace adhm
