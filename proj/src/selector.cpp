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

#include "fastgas/selector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fastgas/kmeans.hpp"
#include "fastgas/parallel.hpp"
#include "fastgas/random.hpp"

namespace fastgas {

namespace {

void check_budget(std::size_t budget, std::size_t pool) {
  if (budget > pool) {
    throw Error(ErrorCode::kBudgetExceedsPool, "budget " + std::to_string(budget) +
                                                   " exceeds pool size " + std::to_string(pool));
  }
}

// Indices of the `budget` largest scores, lowest index first among equals.
template <typename Score>
std::vector<VertexId> top_by_score(const std::vector<Score>& scores, std::size_t budget) {
  std::vector<VertexId> order(scores.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return scores[a] > scores[b]; });
  order.resize(budget);
  return order;
}

}  // namespace

std::vector<GreedyPick> greedy_select_trace(const SimilarityGraph& g, std::size_t n) {
  const std::size_t nv = g.num_vertices();
  if (n > nv) {
    throw Error(ErrorCode::kBudgetExceedsVertices,
                "budget " + std::to_string(n) + " exceeds " + std::to_string(nv) + " vertices");
  }
  // Residual degree per vertex; -1 marks a removed vertex.
  std::vector<std::int64_t> residual(nv);
  for (VertexId v = 0; v < nv; ++v) residual[v] = static_cast<std::int64_t>(g.neighbors(v).size());

  std::vector<GreedyPick> picks;
  picks.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    const auto best = static_cast<VertexId>(
        std::max_element(residual.begin(), residual.end()) - residual.begin());
    picks.push_back({best, static_cast<std::size_t>(residual[best])});
    residual[best] = -1;
    for (const auto& nb : g.neighbors(best)) {
      if (residual[nb.vertex] > 0) --residual[nb.vertex];
    }
  }
  return picks;
}

std::vector<VertexId> greedy_select(const SimilarityGraph& g, std::size_t n) {
  const auto trace = greedy_select_trace(g, n);
  std::vector<VertexId> out;
  out.reserve(trace.size());
  for (const auto& p : trace) out.push_back(p.vertex);
  return out;
}

std::size_t coverage_objective(const SimilarityGraph& g, std::span<const VertexId> selected) {
  std::vector<std::uint8_t> in(g.num_vertices(), 0);
  for (VertexId v : selected) {
    if (v >= g.num_vertices()) {
      throw Error(ErrorCode::kIndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
    }
    in[v] = 1;
  }
  std::size_t covered = 0;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (u < nb.vertex && (in[u] || in[nb.vertex])) ++covered;
    }
  }
  return covered;
}

CoverageOptimum brute_force_max_coverage(const SimilarityGraph& g, std::size_t n) {
  const std::size_t nv = g.num_vertices();
  if (nv > kMaxBruteForceVertices) {
    throw Error(ErrorCode::kGraphTooLarge, "exhaustive search limited to " +
                                               std::to_string(kMaxBruteForceVertices) +
                                               " vertices, got " + std::to_string(nv));
  }
  if (n > nv) {
    throw Error(ErrorCode::kBudgetExceedsVertices,
                "budget " + std::to_string(n) + " exceeds " + std::to_string(nv) + " vertices");
  }
  std::vector<std::uint32_t> nbr_mask(nv, 0);
  for (VertexId u = 0; u < nv; ++u) {
    for (const auto& nb : g.neighbors(u)) nbr_mask[u] |= std::uint32_t{1} << nb.vertex;
  }
  const std::size_t total = g.num_edges();
  // Edges not covered are exactly those inside the complement of the set.
  auto value_of = [&](std::uint32_t mask) {
    std::size_t twice_inside = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      if (!(mask >> v & 1u)) twice_inside += std::popcount(nbr_mask[v] & ~mask);
    }
    return total - twice_inside / 2;
  };

  CoverageOptimum best;
  std::vector<VertexId> combo(n);
  std::iota(combo.begin(), combo.end(), VertexId{0});
  bool first = true;
  while (true) {
    std::uint32_t mask = 0;
    for (VertexId v : combo) mask |= std::uint32_t{1} << v;
    const std::size_t value = value_of(mask);
    if (first || value > best.value) {
      best.value = value;
      best.set = combo;
      first = false;
    }
    // Next combination in lexicographic order.
    std::size_t i = n;
    while (i > 0 && combo[i - 1] == nv - n + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < n; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

std::vector<std::size_t> allocate_quotas(std::span<const std::size_t> part_sizes,
                                         std::size_t budget) {
  const std::size_t k = part_sizes.size();
  std::vector<std::size_t> quotas(k, k == 0 ? 0 : budget / k);
  if (k == 0) return quotas;
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return part_sizes[a] > part_sizes[b]; });
  for (std::size_t i = 0; i < budget % k; ++i) ++quotas[order[i]];

  std::size_t overflow = 0;
  for (std::size_t p = 0; p < k; ++p) {
    if (quotas[p] > part_sizes[p]) {
      overflow += quotas[p] - part_sizes[p];
      quotas[p] = part_sizes[p];
    }
  }
  for (std::size_t p : order) {
    if (overflow == 0) break;
    const std::size_t give = std::min(overflow, part_sizes[p] - quotas[p]);
    quotas[p] += give;
    overflow -= give;
  }
  return quotas;
}

SelectionResult select_from_partition(const SimilarityGraph& g, const Partition& partition,
                                      std::size_t budget, std::size_t threads) {
  if (partition.num_vertices() != g.num_vertices()) {
    throw Error(ErrorCode::kPartitionMismatch, "partition does not cover the graph");
  }
  check_budget(budget, g.num_vertices());
  Stopwatch sw;
  const auto members = partition.members();
  const auto quotas = allocate_quotas(partition.part_sizes(), budget);

  SelectionResult result;
  result.method = "fastgas";
  result.budget = budget;
  result.num_parts = partition.num_parts();
  result.per_part.resize(partition.num_parts());
  parallel_for(members.size(), threads, [&](std::size_t p) {
    if (quotas[p] == 0) return;
    const InducedSubgraph sub = induced_subgraph(g, members[p]);
    for (VertexId local : greedy_select(sub.graph, quotas[p])) {
      result.per_part[p].push_back(sub.to_original[local]);
    }
  });
  for (const auto& picks : result.per_part) {
    result.selected.insert(result.selected.end(), picks.begin(), picks.end());
  }
  result.timings["select"] = sw.elapsed_ms();
  return result;
}

SelectionResult fastgas_select(const SimilarityGraph& g, std::size_t k, std::size_t budget,
                               std::uint64_t seed, const FastgasOptions& options) {
  if (k < 1 || k > g.num_vertices()) {
    throw Error(ErrorCode::kInvalidK, "K must satisfy 1 <= K <= N");
  }
  if (budget < 1) throw Error(ErrorCode::kInvalidParameter, "budget must be >= 1");
  check_budget(budget, g.num_vertices());
  Stopwatch sw;
  PartitionOptions popts;
  popts.epsilon = options.epsilon;
  popts.threads = options.threads;
  const PartitionResult parts = partition_kway(g, k, seed, popts);
  SelectionResult result = select_from_partition(g, parts.partition, budget, options.threads);
  result.seed = seed;
  result.timings["coarsen"] = parts.timings.at("coarsen");
  result.timings["init_bisect"] = parts.timings.at("init");
  result.timings["refine"] = parts.timings.at("refine");
  result.timings["partition_total"] = parts.timings.at("total");
  result.timings["total"] = sw.elapsed_ms();
  return result;
}

SelectionResult random_select(std::size_t pool_size, std::size_t budget, std::uint64_t seed) {
  check_budget(budget, pool_size);
  Stopwatch sw;
  Rng rng(seed);
  std::vector<VertexId> pool(pool_size);
  std::iota(pool.begin(), pool.end(), VertexId{0});
  for (std::size_t i = 0; i < budget; ++i) {
    std::swap(pool[i], pool[i + rng.uniform_index(pool_size - i)]);
  }
  pool.resize(budget);
  SelectionResult result;
  result.method = "random";
  result.budget = budget;
  result.seed = seed;
  result.selected = std::move(pool);
  result.timings["select"] = sw.elapsed_ms();
  result.timings["total"] = result.timings["select"];
  return result;
}

SelectionResult top_degree_select(const SimilarityGraph& g, std::size_t budget) {
  check_budget(budget, g.num_vertices());
  Stopwatch sw;
  std::vector<std::size_t> degrees(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) degrees[v] = g.neighbors(v).size();
  SelectionResult result;
  result.method = "top-degree";
  result.budget = budget;
  result.selected = top_by_score(degrees, budget);
  result.timings["select"] = sw.elapsed_ms();
  result.timings["total"] = result.timings["select"];
  return result;
}

std::vector<double> pagerank_scores(const SimilarityGraph& g, const PageRankOptions& options) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> out_weight(n);
  for (VertexId v = 0; v < n; ++v) out_weight[v] = static_cast<double>(g.weighted_degree(v));

  std::vector<double> x(n, inv_n), next(n), share(n);
  double change = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    double dangling = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      if (out_weight[v] == 0.0) {
        dangling += x[v];
        share[v] = 0.0;
      } else {
        share[v] = x[v] / out_weight[v];
      }
    }
    const double base = (1.0 - options.damping) * inv_n + options.damping * dangling * inv_n;
    change = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      double inflow = 0.0;
      for (const auto& nb : g.neighbors(v)) inflow += share[nb.vertex] * static_cast<double>(nb.weight);
      next[v] = base + options.damping * inflow;
      change += std::abs(next[v] - x[v]);
    }
    x.swap(next);
    if (change < options.tolerance) return x;
  }
  if (change > 1e-6) {
    throw Error(ErrorCode::kNonConvergence,
                "PageRank did not converge in " + std::to_string(options.max_iters) +
                    " iterations (L1 change " + std::to_string(change) + ")");
  }
  return x;
}

SelectionResult pagerank_select(const SimilarityGraph& g, std::size_t budget,
                                const PageRankOptions& options) {
  check_budget(budget, g.num_vertices());
  Stopwatch sw;
  SelectionResult result;
  result.method = "pagerank";
  result.budget = budget;
  result.selected = top_by_score(pagerank_scores(g, options), budget);
  result.timings["select"] = sw.elapsed_ms();
  result.timings["total"] = result.timings["select"];
  return result;
}

SelectionResult subcluster_select(const EmbeddingMatrix& embeddings, std::size_t k,
                                  std::size_t budget, std::uint64_t seed, std::size_t max_iters) {
  const std::size_t n = embeddings.size();
  check_budget(budget, n);
  if (k < 1 || k > budget) {
    throw Error(ErrorCode::kInvalidK, "subclustering needs 1 <= K <= budget");
  }
  Stopwatch sw;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  const KMeansResult top = kmeans(embeddings, all, k, derive_seed(seed, {0}), max_iters);

  std::vector<std::vector<std::size_t>> groups(k);
  for (std::size_t i = 0; i < n; ++i) groups[top.assignment[i]].push_back(i);
  std::vector<std::size_t> sizes(k);
  for (std::size_t c = 0; c < k; ++c) sizes[c] = groups[c].size();
  const auto quotas = allocate_quotas(sizes, budget);

  SelectionResult result;
  result.method = "subcluster";
  result.budget = budget;
  result.num_parts = k;
  result.seed = seed;
  result.per_part.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (quotas[c] == 0) continue;
    const auto& group = groups[c];
    const KMeansResult sub = kmeans(embeddings, group, quotas[c], derive_seed(seed, {1, c}), max_iters);
    std::vector<std::uint8_t> picked(group.size(), 0);
    for (std::size_t s = 0; s < quotas[c]; ++s) {
      bool any_member = false;
      for (std::size_t i = 0; i < group.size(); ++i) {
        if (sub.assignment[i] == s && !picked[i]) any_member = true;
      }
      std::size_t best = group.size();
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < group.size(); ++i) {
        if (picked[i] || (any_member && sub.assignment[i] != s)) continue;
        const double dist = squared_distance(embeddings.row(group[i]), sub.centroid(s));
        if (dist < best_d) {
          best_d = dist;
          best = i;
        }
      }
      picked[best] = 1;
      result.per_part[c].push_back(static_cast<VertexId>(group[best]));
    }
    result.selected.insert(result.selected.end(), result.per_part[c].begin(),
                           result.per_part[c].end());
  }
  result.timings["select"] = sw.elapsed_ms();
  result.timings["total"] = result.timings["select"];
  return result;
}

}  // namespace fastgas
