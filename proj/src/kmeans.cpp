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

#include "fastgas/kmeans.hpp"

#include <limits>
#include <string>

#include "fastgas/random.hpp"

namespace fastgas {

double squared_distance(std::span<const float> x, std::span<const double> c) {
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double diff = static_cast<double>(x[j]) - c[j];
    sum += diff * diff;
  }
  return sum;
}

KMeansResult kmeans(const EmbeddingMatrix& data, std::span<const std::size_t> rows, std::size_t k,
                    std::uint64_t seed, std::size_t max_iters) {
  const std::size_t m = rows.size();
  if (k < 1 || k > m) {
    throw Error(ErrorCode::kInvalidK, "k-means needs 1 <= k <= points (k=" + std::to_string(k) +
                                          ", points=" + std::to_string(m) + ")");
  }
  const std::size_t d = data.dim();
  KMeansResult out;
  out.k = k;
  out.dim = d;
  out.centroids.assign(k * d, 0.0);
  out.assignment.assign(m, 0);

  auto set_centroid_to_row = [&](std::size_t c, std::size_t local) {
    auto row = data.row(rows[local]);
    for (std::size_t j = 0; j < d; ++j) out.centroids[c * d + j] = row[j];
  };

  Rng rng(seed);
  set_centroid_to_row(0, rng.uniform_index(m));
  std::vector<double> nearest(m);
  for (std::size_t i = 0; i < m; ++i) nearest[i] = squared_distance(data.row(rows[i]), out.centroid(0));
  for (std::size_t c = 1; c < k; ++c) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (nearest[i] > nearest[far]) far = i;
    }
    set_centroid_to_row(c, far);
    for (std::size_t i = 0; i < m; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(data.row(rows[i]), out.centroid(c)));
    }
  }

  std::vector<double> sums(k * d);
  std::vector<std::size_t> counts(k);
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      auto row = data.row(rows[i]);
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double dist = squared_distance(row, out.centroid(c));
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      if (iter == 0 || out.assignment[i] != best) changed = true;
      out.assignment[i] = best;
    }
    out.iterations = iter + 1;
    if (!changed) {
      out.converged = true;
      break;
    }
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t c = out.assignment[i];
      auto row = data.row(rows[i]);
      for (std::size_t j = 0; j < d; ++j) sums[c * d + j] += row[j];
      ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        out.centroids[c * d + j] = sums[c * d + j] / static_cast<double>(counts[c]);
      }
    }
  }
  return out;
}

}  // namespace fastgas
