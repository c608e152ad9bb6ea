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
#include "fastgas/partition.hpp"

namespace fastgas {

using VertexId = std::uint32_t;
using Weight = std::int64_t;
// Per-edge storage; from_edges bounds the total edge weight by its maximum,
// so weights merged by coarsening always fit.
using EdgeWeight = std::uint32_t;

struct Neighbor {
  VertexId vertex;
  EdgeWeight weight;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct WeightedEdge {
  VertexId u;
  VertexId v;
  Weight weight;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Undirected graph with positive integer vertex and edge weights, stored
// as CSR with each adjacency list sorted by neighbor index. The level-0
// kNN graph has all weights 1; coarse graphs carry merged weights.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;

  // Each undirected edge appears once, in either orientation. Empty
  // vertex_weights means all ones. Throws kInvalidParameter on self-loops,
  // duplicate edges, out-of-range endpoints, non-positive weights, or a
  // total edge weight above the EdgeWeight range.
  static SimilarityGraph from_edges(std::size_t num_vertices,
                                    std::span<const WeightedEdge> edges,
                                    std::vector<Weight> vertex_weights = {}, int level = 0);

  // Trusted construction from CSR arrays already satisfying every
  // invariant. Used by coarsening and subgraph extraction.
  static SimilarityGraph from_csr_unchecked(std::vector<std::size_t> offsets,
                                            std::vector<Neighbor> adjacency,
                                            std::vector<Weight> vertex_weights, int level);

  std::size_t num_vertices() const noexcept { return vertex_weights_.size(); }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }
  int level() const noexcept { return level_; }

  std::span<const Neighbor> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  // Unweighted neighbor count; throws kIndexOutOfRange.
  std::size_t degree(VertexId v) const;
  // Sum of incident edge weights.
  Weight weighted_degree(VertexId v) const;

  Weight vertex_weight(VertexId v) const { return vertex_weights_[v]; }
  const std::vector<Weight>& vertex_weights() const noexcept { return vertex_weights_; }
  Weight total_vertex_weight() const noexcept { return total_vertex_weight_; }
  Weight total_edge_weight() const noexcept { return total_edge_weight_; }

  const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
  const std::vector<Neighbor>& adjacency() const noexcept { return adjacency_; }

  // Undirected edges with u < v in ascending (u, v) order.
  std::vector<WeightedEdge> edges() const;

  // Full invariant scan (symmetry, sorting, no self-loops or duplicates,
  // positive weights). Throws kInternalError describing the first violation.
  void validate() const;

  friend bool operator==(const SimilarityGraph&, const SimilarityGraph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<Weight> vertex_weights_;
  Weight total_vertex_weight_ = 0;
  Weight total_edge_weight_ = 0;
  int level_ = 0;
};

// Directed k-nearest-neighbor lists under cosine similarity, each sorted by
// descending similarity with ties broken by lower index. Exact, all pairs.
std::vector<std::vector<VertexId>> knn_lists(const EmbeddingMatrix& embeddings, std::size_t k,
                                             std::size_t threads = 0);

// Union-symmetrized kNN graph: u ~ v iff u in kNN(v) or v in kNN(u).
// Throws kInvalidK unless 1 <= k <= N - 1.
SimilarityGraph build_knn_graph(const EmbeddingMatrix& embeddings, std::size_t k,
                                std::size_t threads = 0);

struct InducedSubgraph {
  SimilarityGraph graph;
  std::vector<VertexId> to_original;  // sub index -> original index, ascending
};

// Subgraph on `vertices` (any order, no duplicates). Sub-indices follow
// ascending original index so lowest-index tie rules carry over.
InducedSubgraph induced_subgraph(const SimilarityGraph& g, std::span<const VertexId> vertices);

// Total weight of edges whose endpoints lie in different parts.
Weight edge_cut(const SimilarityGraph& g, const Partition& partition);

}  // namespace fastgas
