// Copyright 2026 The Authors.
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

#ifndef CURVSUB_ERRORS_H_
#define CURVSUB_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvsub {

enum class ErrorCode {
  kContractViolation,
  kInvalidInstance,
  kInvalidParameter,
  kInvalidArgument,
  kZeroSingleton,
  kNonSubmodular,
  kScale,
  kIncompleteSample,
  kInvalidOverride,
  kCertificationFailure,
  kInfeasible,
  kParse,
  kLearningFailure,
  kInvalidDataset,
  kInvalidRegime,
  kInternal,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kContractViolation: return "contract violation";
    case ErrorCode::kInvalidInstance: return "invalid instance";
    case ErrorCode::kInvalidParameter: return "invalid parameter";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kZeroSingleton: return "zero singleton";
    case ErrorCode::kNonSubmodular: return "non-submodular input";
    case ErrorCode::kScale: return "scale limit exceeded";
    case ErrorCode::kIncompleteSample: return "incomplete sample";
    case ErrorCode::kInvalidOverride: return "invalid override";
    case ErrorCode::kCertificationFailure: return "certification failure";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kLearningFailure: return "learning failure";
    case ErrorCode::kInvalidDataset: return "invalid dataset";
    case ErrorCode::kInvalidRegime: return "invalid regime";
    case ErrorCode::kInternal: return "internal error";
    case ErrorCode::kIo: return "I/O error";
  }
  return "unknown";
}

}  // namespace curvsub

#endif  // CURVSUB_ERRORS_H_
