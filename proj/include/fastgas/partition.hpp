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
#include <cstdint>
#include <vector>

#include "fastgas/error.hpp"

namespace fastgas {

using PartId = std::uint32_t;

// Assignment of every vertex to one of K parts.
class Partition {
 public:
  Partition() = default;
  // Throws kInvalidParameter if any entry is >= num_parts.
  Partition(std::vector<PartId> assignment, std::size_t num_parts);

  static Partition trivial(std::size_t num_vertices);

  std::size_t num_parts() const noexcept { return num_parts_; }
  std::size_t num_vertices() const noexcept { return assignment_.size(); }
  PartId part_of(std::size_t v) const { return assignment_[v]; }
  const std::vector<PartId>& assignment() const noexcept { return assignment_; }
  const std::vector<std::size_t>& part_sizes() const noexcept { return part_sizes_; }

  // Vertices of each part in ascending order.
  std::vector<std::vector<std::uint32_t>> members() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<PartId> assignment_;
  std::size_t num_parts_ = 0;
  std::vector<std::size_t> part_sizes_;
};

}  // namespace fastgas
