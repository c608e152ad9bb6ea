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

#include "fastgas/similarity_graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "fastgas/parallel.hpp"

namespace fastgas {

namespace {

// Rows per similarity tile. Fixed so that every similarity value, and hence
// every tie decision, is independent of the thread count.
constexpr std::size_t kTileRows = 128;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMatrix normalized_rows(const EmbeddingMatrix& e) {
  RowMatrix x(e.size(), e.dim());
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto row = e.row(i);
    double norm = 0.0;
    for (float v : row) norm += static_cast<double>(v) * v;
    if (norm == 0.0) {
      throw Error(ErrorCode::kZeroVector, "zero embedding for '" + e.id(i) + "'", i + 1);
    }
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < e.dim(); ++j) x(i, j) = static_cast<double>(row[j]) / norm;
  }
  return x;
}

}  // namespace

SimilarityGraph SimilarityGraph::from_edges(std::size_t num_vertices,
                                            std::span<const WeightedEdge> edges,
                                            std::vector<Weight> vertex_weights, int level) {
  if (vertex_weights.empty()) vertex_weights.assign(num_vertices, 1);
  if (vertex_weights.size() != num_vertices) {
    throw Error(ErrorCode::kInvalidParameter, "vertex weight count differs from vertex count");
  }
  for (Weight w : vertex_weights) {
    if (w < 1) throw Error(ErrorCode::kInvalidParameter, "vertex weights must be >= 1");
  }
  std::vector<std::size_t> offsets(num_vertices + 1, 0);
  Weight total = 0;
  for (const auto& e : edges) {
    if (e.u >= num_vertices || e.v >= num_vertices) {
      throw Error(ErrorCode::kInvalidParameter,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
    }
    if (e.u == e.v) throw Error(ErrorCode::kInvalidParameter, "self-loop at " + std::to_string(e.u));
    if (e.weight < 1) throw Error(ErrorCode::kInvalidParameter, "edge weights must be >= 1");
    total += e.weight;
    if (total > Weight{std::numeric_limits<EdgeWeight>::max()}) {
      throw Error(ErrorCode::kInvalidParameter, "total edge weight exceeds the supported range");
    }
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<Neighbor> adjacency(offsets.back());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    adjacency[fill[e.u]++] = {e.v, static_cast<EdgeWeight>(e.weight)};
    adjacency[fill[e.v]++] = {e.u, static_cast<EdgeWeight>(e.weight)};
  }
  for (std::size_t v = 0; v < num_vertices; ++v) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    auto dup = std::adjacent_find(first, last, [](const Neighbor& a, const Neighbor& b) {
      return a.vertex == b.vertex;
    });
    if (dup != last) {
      throw Error(ErrorCode::kInvalidParameter, "duplicate edge (" + std::to_string(v) + "," +
                                                    std::to_string(dup->vertex) + ")");
    }
  }
  return from_csr_unchecked(std::move(offsets), std::move(adjacency), std::move(vertex_weights),
                            level);
}

SimilarityGraph SimilarityGraph::from_csr_unchecked(std::vector<std::size_t> offsets,
                                                    std::vector<Neighbor> adjacency,
                                                    std::vector<Weight> vertex_weights,
                                                    int level) {
  SimilarityGraph g;
  g.offsets_ = std::move(offsets);
  g.adjacency_ = std::move(adjacency);
  g.vertex_weights_ = std::move(vertex_weights);
  g.level_ = level;
  g.total_vertex_weight_ =
      std::accumulate(g.vertex_weights_.begin(), g.vertex_weights_.end(), Weight{0});
  Weight twice = 0;
  for (const auto& nb : g.adjacency_) twice += nb.weight;
  g.total_edge_weight_ = twice / 2;
  return g;
}

std::size_t SimilarityGraph::degree(VertexId v) const {
  if (v >= num_vertices()) {
    throw Error(ErrorCode::kIndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
  }
  return offsets_[v + 1] - offsets_[v];
}

Weight SimilarityGraph::weighted_degree(VertexId v) const {
  Weight sum = 0;
  for (const auto& nb : neighbors(v)) sum += nb.weight;
  return sum;
}

std::vector<WeightedEdge> SimilarityGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(num_edges());
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (const auto& nb : neighbors(u)) {
      if (u < nb.vertex) out.push_back({u, nb.vertex, nb.weight});
    }
  }
  return out;
}

void SimilarityGraph::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInternalError, what); };
  const std::size_t n = num_vertices();
  if (offsets_.size() != n + 1 || offsets_.front() != 0 || offsets_.back() != adjacency_.size()) {
    fail("malformed CSR offsets");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (vertex_weights_[v] < 1) fail("vertex weight < 1 at " + std::to_string(v));
    if (offsets_[v] > offsets_[v + 1]) fail("decreasing offsets at " + std::to_string(v));
    auto nbrs = neighbors(static_cast<VertexId>(v));
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const auto& nb = nbrs[i];
      if (nb.vertex >= n) fail("neighbor out of range at " + std::to_string(v));
      if (nb.vertex == v) fail("self-loop at " + std::to_string(v));
      if (nb.weight < 1) fail("edge weight < 1 at " + std::to_string(v));
      if (i > 0 && nbrs[i - 1].vertex >= nb.vertex) {
        fail("unsorted or duplicate neighbors at " + std::to_string(v));
      }
      auto back = neighbors(nb.vertex);
      auto it = std::lower_bound(back.begin(), back.end(), static_cast<VertexId>(v),
                                 [](const Neighbor& a, VertexId x) { return a.vertex < x; });
      if (it == back.end() || it->vertex != v || it->weight != nb.weight) {
        fail("asymmetric edge (" + std::to_string(v) + "," + std::to_string(nb.vertex) + ")");
      }
    }
  }
}

std::vector<std::vector<VertexId>> knn_lists(const EmbeddingMatrix& embeddings, std::size_t k,
                                             std::size_t threads) {
  const std::size_t n = embeddings.size();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::kInvalidK, "k must satisfy 1 <= k <= N-1 (k=" + std::to_string(k) +
                                          ", N=" + std::to_string(n) + ")");
  }
  const RowMatrix x = normalized_rows(embeddings);
  std::vector<std::vector<VertexId>> lists(n);
  const std::size_t tiles = (n + kTileRows - 1) / kTileRows;

  parallel_for(tiles, threads, [&](std::size_t tile) {
    const std::size_t begin = tile * kTileRows;
    const std::size_t rows = std::min(kTileRows, n - begin);
    const RowMatrix sims = x.middleRows(static_cast<Eigen::Index>(begin),
                                        static_cast<Eigen::Index>(rows)) *
                           x.transpose();
    std::vector<VertexId> candidates(n - 1);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t self = begin + r;
      const double* s = sims.data() + r * n;
      std::size_t c = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != self) candidates[c++] = static_cast<VertexId>(j);
      }
      auto better = [s](VertexId a, VertexId b) { return s[a] > s[b] || (s[a] == s[b] && a < b); };
      std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                        candidates.end(), better);
      lists[self].assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k));
    }
  });
  return lists;
}

SimilarityGraph build_knn_graph(const EmbeddingMatrix& embeddings, std::size_t k,
                                std::size_t threads) {
  const auto lists = knn_lists(embeddings, k, threads);
  const std::size_t n = lists.size();
  std::vector<std::vector<VertexId>> adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (VertexId v : lists[u]) {
      adj[u].push_back(v);
      adj[v].push_back(static_cast<VertexId>(u));
    }
  }
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<Neighbor> adjacency;
  adjacency.reserve(2 * n * k);
  for (std::size_t u = 0; u < n; ++u) {
    auto& list = adj[u];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (VertexId v : list) adjacency.push_back({v, 1});
    offsets[u + 1] = adjacency.size();
  }
  return SimilarityGraph::from_csr_unchecked(std::move(offsets), std::move(adjacency),
                                             std::vector<Weight>(n, 1), 0);
}

InducedSubgraph induced_subgraph(const SimilarityGraph& g, std::span<const VertexId> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kEmptyVertexSet, "induced subgraph of no vertices");
  const std::size_t n = g.num_vertices();
  std::vector<VertexId> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= n) {
    throw Error(ErrorCode::kIndexOutOfRange, "vertex " + std::to_string(sorted.back()) +
                                                 " out of range");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidParameter, "duplicate vertex in induced subgraph set");
  }
  constexpr VertexId kAbsent = ~VertexId{0};
  std::vector<VertexId> local(n, kAbsent);
  for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<VertexId>(i);

  std::vector<std::size_t> offsets(sorted.size() + 1, 0);
  std::vector<Neighbor> adjacency;
  std::vector<Weight> weights(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    weights[i] = g.vertex_weight(sorted[i]);
    // Neighbor lists are sorted by original index; the local map is
    // monotone, so the filtered list stays sorted.
    for (const auto& nb : g.neighbors(sorted[i])) {
      if (local[nb.vertex] != kAbsent) adjacency.push_back({local[nb.vertex], nb.weight});
    }
    offsets[i + 1] = adjacency.size();
  }
  return {SimilarityGraph::from_csr_unchecked(std::move(offsets), std::move(adjacency),
                                              std::move(weights), g.level()),
          std::move(sorted)};
}

Weight edge_cut(const SimilarityGraph& g, const Partition& partition) {
  if (partition.num_vertices() != g.num_vertices()) {
    throw Error(ErrorCode::kPartitionMismatch,
                "partition covers " + std::to_string(partition.num_vertices()) +
                    " vertices, graph has " + std::to_string(g.num_vertices()));
  }
  Weight cut = 0;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (u < nb.vertex && partition.part_of(u) != partition.part_of(nb.vertex)) cut += nb.weight;
    }
  }
  return cut;
}

Partition::Partition(std::vector<PartId> assignment, std::size_t num_parts)
    : assignment_(std::move(assignment)), num_parts_(num_parts), part_sizes_(num_parts, 0) {
  for (PartId p : assignment_) {
    if (p >= num_parts_) {
      throw Error(ErrorCode::kInvalidParameter, "part index " + std::to_string(p) +
                                                    " >= K=" + std::to_string(num_parts_));
    }
    ++part_sizes_[p];
  }
}

Partition Partition::trivial(std::size_t num_vertices) {
  return Partition(std::vector<PartId>(num_vertices, 0), 1);
}

std::vector<std::vector<std::uint32_t>> Partition::members() const {
  std::vector<std::vector<std::uint32_t>> out(num_parts_);
  for (std::size_t p = 0; p < num_parts_; ++p) out[p].reserve(part_sizes_[p]);
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    out[assignment_[v]].push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace fastgas
