#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conjalg {

enum class ErrorCode {
    InvalidSystem,
    SystemMismatch,
    InvalidWitness,
    InvalidArgument,
    NotFixedPoint,
    FixedPoint,
    NotPreperiodic,
    OnBoundary,
    Pole,
    Singular,
    NotDiskSelfMap,
    NotDecidable,
    OracleBound,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::SystemMismatch: return "SystemMismatch";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotFixedPoint: return "NotFixedPoint";
    case ErrorCode::FixedPoint: return "FixedPoint";
    case ErrorCode::NotPreperiodic: return "NotPreperiodic";
    case ErrorCode::OnBoundary: return "OnBoundary";
    case ErrorCode::Pole: return "Pole";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotDiskSelfMap: return "NotDiskSelfMap";
    case ErrorCode::NotDecidable: return "NotDecidable";
    case ErrorCode::OracleBound: return "OracleBound";
    }
    return "Unknown";
}

/// Precondition failure raised by any of the library modules.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace conjalg
