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

#include "core/error.h"

namespace nccoreset {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kDuplicateSampleId: return "DuplicateSampleId";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kUnknownLabelToken: return "UnknownLabelToken";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kDegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::kMissingScore: return "MissingScore";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kSingleCluster: return "SingleCluster";
    case ErrorCode::kEmptyCluster: return "EmptyCluster";
    case ErrorCode::kCountExceedsClass: return "CountExceedsClass";
    case ErrorCode::kSingleClassOnly: return "SingleClassOnly";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kEmptyClip: return "EmptyClip";
    case ErrorCode::kClipTooShort: return "ClipTooShort";
    case ErrorCode::kNegativePower: return "NegativePower";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDivergenceDetected: return "DivergenceDetected";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace nccoreset
