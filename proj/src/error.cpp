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

#include "fastgas/error.hpp"

namespace fastgas {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kEmptyVertexSet: return "EmptyVertexSet";
    case ErrorCode::kPartitionMismatch: return "PartitionMismatch";
    case ErrorCode::kGraphTooSmall: return "GraphTooSmall";
    case ErrorCode::kGraphTooLarge: return "GraphTooLarge";
    case ErrorCode::kInvalidBisection: return "InvalidBisection";
    case ErrorCode::kBudgetExceedsVertices: return "BudgetExceedsVertices";
    case ErrorCode::kBudgetExceedsPool: return "BudgetExceedsPool";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kEmptySelection: return "EmptySelection";
    case ErrorCode::kInternalError: return "InternalError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound:
    case ErrorCode::kFormatError:
    case ErrorCode::kZeroVector:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kPartitionMismatch:
      return 1;
    case ErrorCode::kInternalError:
    case ErrorCode::kNonConvergence:
    case ErrorCode::kInvalidBisection:
      return 3;
    default:
      return 2;
  }
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> record) {
  std::string out(to_string(code));
  out += ": ";
  out += message;
  if (record) out += " (record " + std::to_string(*record) + ")";
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> record)
    : std::runtime_error(decorate(code, message, record)),
      code_(code),
      record_(record) {}

}  // namespace fastgas
