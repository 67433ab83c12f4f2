// Copyright (c) 2026 The nc-coreset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NCCORESET_CORE_ERROR_H_
#define NCCORESET_CORE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace nccoreset {

// Numeric values are part of the C ABI (nc_status) and of the CLI exit codes;
// append only.
enum class ErrorCode : int {
  kOk = 0,
  kBadMagic = 1,
  kVersionMismatch = 2,
  kTruncatedFile = 3,
  kDimensionMismatch = 4,
  kNonFiniteValue = 5,
  kDuplicateSampleId = 6,
  kIoFailure = 7,
  kInvariantViolation = 8,
  kMalformedRow = 9,
  kUnknownLabelToken = 10,
  kEmptyClass = 11,
  kDegenerateGeometry = 12,
  kMissingScore = 13,
  kKTooLarge = 14,
  kEmptyInput = 15,
  kSingleCluster = 16,
  kEmptyCluster = 17,
  kCountExceedsClass = 18,
  kSingleClassOnly = 19,
  kUnsupportedFormat = 20,
  kCorruptFile = 21,
  kEmptyClip = 22,
  kClipTooShort = 23,
  kNegativePower = 24,
  kShapeMismatch = 25,
  kInvalidConfig = 26,
  kDivergenceDetected = 27,
  kInvalidArgument = 28,
  kInternal = 29,
};

inline constexpr int kErrorCodeCount = 30;

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace nccoreset

#endif  // NCCORESET_CORE_ERROR_H_
