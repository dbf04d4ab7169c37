// Copyright 2026 The fimax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fimax/error.hpp"

namespace fimax {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kStepUnderflow: return "StepUnderflow";
    case ErrorCode::kMaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kNonFiniteResult: return "NonFiniteResult";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kSingularInformation: return "SingularInformation";
    case ErrorCode::kDegenerateEigenvalue: return "DegenerateEigenvalue";
    case ErrorCode::kLinesearchFailed: return "LinesearchFailed";
    case ErrorCode::kMaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::kRiccatiBlowup: return "RiccatiBlowup";
    case ErrorCode::kStillSingular: return "StillSingular";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool IsNumericalError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kConfigError:
    case ErrorCode::kIoError:
      return false;
    default:
      return true;
  }
}

}  // namespace fimax
