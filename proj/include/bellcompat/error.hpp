// Copyright 2026 The bellcompat Authors
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

namespace bellcompat {

enum class ErrorCode {
    DimensionMismatch,
    NotHermitian,
    NonUnitAxis,
    OutOfRange,
    NotUnbiased,
    InvalidTolerance,
    NotInvolutive,
    InvalidState,
    NonRealTrace,
    DegenerateDelta,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NonUnitAxis:
            return "NonUnitAxis";
        case ErrorCode::OutOfRange:
            return "OutOfRange";
        case ErrorCode::NotUnbiased:
            return "NotUnbiased";
        case ErrorCode::InvalidTolerance:
            return "InvalidTolerance";
        case ErrorCode::NotInvolutive:
            return "NotInvolutive";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::NonRealTrace:
            return "NonRealTrace";
        case ErrorCode::DegenerateDelta:
            return "DegenerateDelta";
    }
    return "Unknown";
}

/// Every precondition failure in the library is reported through this type.
/// The code is stable and is what the command-line front end prints.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace bellcompat
