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
#include <string>
#include <vector>

#include "fastgas/embedding.hpp"
#include "fastgas/partition.hpp"
#include "fastgas/partitioner.hpp"
#include "fastgas/similarity_graph.hpp"
#include "fastgas/timer.hpp"

namespace fastgas {

struct SelectionResult {
  std::string method;
  std::size_t budget = 0;
  std::size_t num_parts = 0;  // K; 0 for methods without parts
  std::uint64_t seed = 0;
  std::vector<VertexId> selected;
  std::vector<std::vector<VertexId>> per_part;  // pick order within each part
  StageTimings timings;
};

struct GreedyPick {
  VertexId vertex;
  std::size_t residual_degree;  // degree in the residual graph when picked
};

// Picks n times the vertex of maximum residual degree (lowest index on
// ties), removing it and its incident edges after each pick.
std::vector<GreedyPick> greedy_select_trace(const SimilarityGraph& g, std::size_t n);
std::vector<VertexId> greedy_select(const SimilarityGraph& g, std::size_t n);

// Number of edges with at least one endpoint in `selected`.
std::size_t coverage_objective(const SimilarityGraph& g, std::span<const VertexId> selected);

struct CoverageOptimum {
  std::vector<VertexId> set;  // lexicographically smallest maximizer
  std::size_t value = 0;
};

// Exhaustive search over all n-subsets. Limited to graphs of at most 24 vertices.
CoverageOptimum brute_force_max_coverage(const SimilarityGraph& g, std::size_t n);

inline constexpr std::size_t kMaxBruteForceVertices = 24;

// floor(M/K) per part, the remainder one each to the largest parts (lowest
// index on ties), then any quota above a part's size moved to the
// next-largest parts with spare room.
std::vector<std::size_t> allocate_quotas(std::span<const std::size_t> part_sizes,
                                         std::size_t budget);

struct FastgasOptions {
  double epsilon = kDefaultEpsilon;
  std::size_t threads = 0;
};

// Greedy selection inside each part of an existing partition.
SelectionResult select_from_partition(const SimilarityGraph& g, const Partition& partition,
                                      std::size_t budget, std::size_t threads = 0);

// Full pipeline: partition_kway, then select_from_partition.
SelectionResult fastgas_select(const SimilarityGraph& g, std::size_t k, std::size_t budget,
                               std::uint64_t seed, const FastgasOptions& options = {});

SelectionResult random_select(std::size_t pool_size, std::size_t budget, std::uint64_t seed);

// Static top-M by level-0 degree; no residual updates.
SelectionResult top_degree_select(const SimilarityGraph& g, std::size_t budget);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;
  std::size_t max_iters = 200;
};

std::vector<double> pagerank_scores(const SimilarityGraph& g, const PageRankOptions& options = {});
SelectionResult pagerank_select(const SimilarityGraph& g, std::size_t budget,
                                const PageRankOptions& options = {});

// K-means into K groups, then each group into its quota of subclusters;
// the row nearest each subcluster centroid is selected.
SelectionResult subcluster_select(const EmbeddingMatrix& embeddings, std::size_t k,
                                  std::size_t budget, std::uint64_t seed,
                                  std::size_t max_iters = 100);

}  // namespace fastgas
