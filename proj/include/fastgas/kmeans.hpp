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
#include <span>
#include <vector>

#include "fastgas/embedding.hpp"

namespace fastgas {

struct KMeansResult {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> assignment;  // per input row, cluster in [0, k)
  std::vector<double> centroids;        // k x dim, row-major
  std::size_t iterations = 0;
  bool converged = false;

  std::span<const double> centroid(std::size_t c) const { return {centroids.data() + c * dim, dim}; }
};

// Lloyd's algorithm on the given rows of `data` (Euclidean distance) with
// farthest-point seeding: the first center is a seeded random row, each
// further center the row farthest from all chosen centers (lowest index on
// ties). Assignment ties go to the lower cluster index; an emptied cluster
// keeps its previous centroid. Throws kInvalidK unless 1 <= k <= rows.size().
KMeansResult kmeans(const EmbeddingMatrix& data, std::span<const std::size_t> rows, std::size_t k,
                    std::uint64_t seed, std::size_t max_iters = 100);

double squared_distance(std::span<const float> x, std::span<const double> c);

}  // namespace fastgas
