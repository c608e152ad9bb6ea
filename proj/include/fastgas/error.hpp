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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fastgas {

enum class ErrorCode {
  kFileNotFound,
  kFormatError,
  kInvalidParameter,
  kZeroVector,
  kDimensionMismatch,
  kInvalidK,
  kIndexOutOfRange,
  kEmptyVertexSet,
  kPartitionMismatch,
  kGraphTooSmall,
  kGraphTooLarge,
  kInvalidBisection,
  kBudgetExceedsVertices,
  kBudgetExceedsPool,
  kNonConvergence,
  kEmptySelection,
  kInternalError,
};

std::string_view to_string(ErrorCode code);

// Process exit code for the command-line tool: 1 = input error,
// 2 = parameter error, 3 = internal invariant violation.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> record = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  // 1-based record (line / row) number for input-format errors.
  std::optional<std::size_t> record() const noexcept { return record_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> record_;
};

}  // namespace fastgas
