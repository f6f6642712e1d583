// pdmqi/error.hpp
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdmqi {

enum class ErrorKind {
    NonTerminating,
    PoleInC,
    DomainError,
    SingularAtOrigin,
    InvalidRadicand,
    UnsupportedLevel,
    NotConverged,
    SingularPotentialOnGrid,
    ConvergenceFailure,
    MomentMismatch,
    NormalizationFailure,
    InvalidConfig,
    Io,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to a machine-readable record.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::PoleInC: return "PoleInC";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SingularAtOrigin: return "SingularAtOrigin";
    case ErrorKind::InvalidRadicand: return "InvalidRadicand";
    case ErrorKind::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::SingularPotentialOnGrid: return "SingularPotentialOnGrid";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::MomentMismatch: return "MomentMismatch";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

} // namespace pdmqi
