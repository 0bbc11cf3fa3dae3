// Copyright 2026 The spin-torus Authors
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

#include "spintorus/error.h"

namespace spintorus {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kNotNormalized:
            return "NotNormalized";
        case ErrorCode::kInvalidArgument:
            return "InvalidArgument";
        case ErrorCode::kDegenerateShear:
            return "DegenerateShear";
        case ErrorCode::kStepTooSmall:
            return "StepTooSmall";
        case ErrorCode::kNotDisentangled:
            return "NotDisentangled";
        case ErrorCode::kZeroCoupling:
            return "ZeroCoupling";
        case ErrorCode::kConsistency:
            return "Consistency";
        case ErrorCode::kConfigInvalid:
            return "ConfigInvalid";
        case ErrorCode::kIoError:
            return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

ConfigError::ConfigError(std::string field_path, const std::string &message)
    : Error(ErrorCode::kConfigInvalid, field_path + ": " + message), field_path_(std::move(field_path)) {
}

}  // namespace spintorus
