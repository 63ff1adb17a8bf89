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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rai {

enum class ErrorCode {
  kInvalidInput,
  kAllColumnsConstant,
  kConstantResponse,
  kCollinearFeature,
  kInsufficientDf,
  kSingularSubset,
  kInsufficientWealth,
  kNoFinitePass,
  kSingularStep,
  kBudgetExceeded,
  kAllSubsetsSingular,
  kConstantInteraction,
  kDegenerateTerms,
  kLengthMismatch,
  kParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kAllColumnsConstant: return "AllColumnsConstant";
    case ErrorCode::kConstantResponse: return "ConstantResponse";
    case ErrorCode::kCollinearFeature: return "CollinearFeature";
    case ErrorCode::kInsufficientDf: return "InsufficientDf";
    case ErrorCode::kSingularSubset: return "SingularSubset";
    case ErrorCode::kInsufficientWealth: return "InsufficientWealth";
    case ErrorCode::kNoFinitePass: return "NoFinitePass";
    case ErrorCode::kSingularStep: return "SingularStep";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kAllSubsetsSingular: return "AllSubsetsSingular";
    case ErrorCode::kConstantInteraction: return "ConstantInteraction";
    case ErrorCode::kDegenerateTerms: return "DegenerateTerms";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

// All library failures are reported through this type; code() says which.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rai
