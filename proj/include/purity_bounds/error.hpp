// Copyright 2026 The purity-bounds Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace purity_bounds {

enum class ErrorCode {
    NotHermitian,
    NotUnitTrace,
    NotPSD,
    DimMismatch,
    NoConvergence,
    BadOrder,
    OutOfRange,
    InconsistentPurities,
    ProjectionFailed,
    TooLarge,
    BadMethod,
    ParseError,
    InvariantViolation,
};

constexpr std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotUnitTrace: return "NotUnitTrace";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InconsistentPurities: return "InconsistentPurities";
        case ErrorCode::ProjectionFailed: return "ProjectionFailed";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::BadMethod: return "BadMethod";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

/// Library error. `magnitude()` carries the offending quantity where one
/// exists (e.g. the Hermiticity defect, the negative eigenvalue, the sweep
/// count at which Jacobi gave up).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, double magnitude = 0.0)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code),
          magnitude_(magnitude) {}

    ErrorCode code() const noexcept { return code_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    ErrorCode code_;
    double magnitude_;
};

}  // namespace purity_bounds
