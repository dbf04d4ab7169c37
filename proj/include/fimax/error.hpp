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

#ifndef FIMAX_ERROR_HPP_
#define FIMAX_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace fimax {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kOutOfDomain,
  kStepUnderflow,
  kMaxStepsExceeded,
  kNonFiniteState,
  kNonFiniteResult,
  kValidationFailed,
  kSingularCovariance,
  kSingularInformation,
  kDegenerateEigenvalue,
  kLinesearchFailed,
  kMaxIterExceeded,
  kRiccatiBlowup,
  kStillSingular,
  kConfigError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the C
// API maps them onto status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised when an information matrix has no usable inverse; carries the
// parameter combination the experiment cannot resolve.
class SingularInformationError : public Error {
 public:
  SingularInformationError(const std::string& message,
                           Eigen::VectorXd null_direction)
      : Error(ErrorCode::kSingularInformation, message),
        null_direction_(std::move(null_direction)) {}

  const Eigen::VectorXd& null_direction() const { return null_direction_; }

 private:
  Eigen::VectorXd null_direction_;
};

// Numerical failures (as opposed to bad input or configuration).
bool IsNumericalError(ErrorCode code);

}  // namespace fimax

#endif  // FIMAX_ERROR_HPP_
