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

// Small graph builders and reference computations shared by the tests.
// Nothing here calls into the code under test beyond graph construction.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fastgas/error.hpp"
#include "fastgas/similarity_graph.hpp"

namespace fastgas::testing {

inline SimilarityGraph graph_of(std::size_t n, std::vector<std::pair<VertexId, VertexId>> pairs) {
  std::vector<WeightedEdge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1});
  return SimilarityGraph::from_edges(n, edges);
}

inline SimilarityGraph path(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return graph_of(n, e);
}

inline SimilarityGraph cycle(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 0; v < n; ++v) e.emplace_back(v, static_cast<VertexId>((v + 1) % n));
  return graph_of(n, e);
}

// Center 0, leaves 1..leaves.
inline SimilarityGraph star(std::size_t leaves, std::size_t isolated = 0) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return graph_of(leaves + 1 + isolated, e);
}

inline SimilarityGraph complete(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return graph_of(n, e);
}

// {0,1,2} and {3,4,5} with an optional bridge 2-3.
inline SimilarityGraph two_triangles(bool bridge) {
  std::vector<std::pair<VertexId, VertexId>> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  if (bridge) e.emplace_back(2, 3);
  return graph_of(6, e);
}

// Erdos-Renyi graph from std::mt19937_64, independent of the library RNG.
inline SimilarityGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (unif(gen) < p) e.emplace_back(u, v);
  return graph_of(n, e);
}

// Crossing weight recomputed from the adjacency lists.
inline Weight crossing_weight(const SimilarityGraph& g, const std::vector<std::size_t>& label) {
  Weight cut = 0;
  for (VertexId u = 0; u < g.num_vertices(); ++u)
    for (const auto& nb : g.neighbors(u))
      if (u < nb.vertex && label[u] != label[nb.vertex]) cut += nb.weight;
  return cut;
}

// Best agreement between two labelings over all relabelings of `b`,
// by enumerating permutations of [0, k). Fine for k <= 10.
inline double best_agreement(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                             std::size_t k) {
  std::vector<std::vector<std::size_t>> confusion(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < a.size(); ++i) ++confusion[a[i]][b[i]];
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hit = 0;
    for (std::size_t c = 0; c < k; ++c) hit += confusion[c][perm[c]];
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(a.size());
}

// Minimum cut over every 0/1 labeling whose side-0 weight lies in [lo, hi].
inline Weight exhaustive_min_bisection(const SimilarityGraph& g, Weight lo, Weight hi) {
  const std::size_t n = g.num_vertices();
  Weight best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Weight w0 = 0;
    std::vector<std::size_t> label(n);
    for (std::size_t v = 0; v < n; ++v) {
      label[v] = (mask >> v) & 1;
      if (label[v] == 0) w0 += g.vertex_weight(static_cast<VertexId>(v));
    }
    if (w0 < lo || w0 > hi) continue;
    const Weight cut = crossing_weight(g, label);
    if (best < 0 || cut < best) best = cut;
  }
  return best;
}

template <typename F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternalError;  // sentinel: nothing thrown
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("fastgas_" + tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fastgas::testing
