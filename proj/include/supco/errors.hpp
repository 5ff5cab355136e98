#pragma once

#include <stdexcept>
#include <string>

namespace supco {

enum class ErrorCode {
    NoMinimumFound,
    DegenerateMinimum,
    RootNotConverged,
    NotConverged,
    UnsupportedModel,
    OnResonance,
    FixedPointDiverged,
    ResonanceTooClose,
    DispersiveViolated,
    BasisMismatch,
    IllConditioned,
    NoFeasiblePoint,
    InvalidArgument,
    ConfigError,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::NoMinimumFound: return "NoMinimumFound";
        case ErrorCode::DegenerateMinimum: return "DegenerateMinimum";
        case ErrorCode::RootNotConverged: return "RootNotConverged";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::UnsupportedModel: return "UnsupportedModel";
        case ErrorCode::OnResonance: return "OnResonance";
        case ErrorCode::FixedPointDiverged: return "FixedPointDiverged";
        case ErrorCode::ResonanceTooClose: return "ResonanceTooClose";
        case ErrorCode::DispersiveViolated: return "DispersiveViolated";
        case ErrorCode::BasisMismatch: return "BasisMismatch";
        case ErrorCode::IllConditioned: return "IllConditioned";
        case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace supco
