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

// Balanced K-way partitioning by recursive multilevel bisection:
// random-matching coarsening, best-of-N BFS region growing on the
// coarsest graph, and FM-style boundary refinement while uncoarsening.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fastgas/partition.hpp"
#include "fastgas/random.hpp"
#include "fastgas/similarity_graph.hpp"
#include "fastgas/timer.hpp"

namespace fastgas {

inline constexpr double kDefaultEpsilon = 0.03;

struct Bisection {
  std::vector<std::uint8_t> side;
  Weight cut = 0;
  std::array<Weight, 2> side_weights{0, 0};

  // Computes cut and side weights from scratch. Throws kInvalidBisection
  // if the side vector does not match the graph or holds values other than 0/1.
  static Bisection from_sides(const SimilarityGraph& g, std::vector<std::uint8_t> side);

  Partition to_partition() const;
};

// Inclusive range for the weight of side 0.
struct BalanceWindow {
  Weight min0 = 0;
  Weight max0 = 0;

  // Window around total * fraction0 with relative tolerance epsilon,
  // widened to the nearest integers around the target so it is never empty.
  static BalanceWindow around(Weight total, double fraction0, double epsilon);

  bool contains(Weight w0) const { return w0 >= min0 && w0 <= max0; }
  Weight violation(Weight w0) const {
    return w0 < min0 ? min0 - w0 : (w0 > max0 ? w0 - max0 : 0);
  }
};

struct CoarseningLevel {
  SimilarityGraph graph;
  std::vector<VertexId> match_map;  // fine vertex -> coarse vertex
};

// One level of random-matching coarsening. Throws kGraphTooSmall below 2 vertices.
CoarseningLevel random_matching_coarsen(const SimilarityGraph& g, Rng& rng);

// Assigns every fine vertex the side of its coarse vertex. The cut weight
// carries over unchanged.
Bisection project_bisection(const CoarseningLevel& level, const SimilarityGraph& fine,
                            const Bisection& coarse);

// Grows `trials` BFS regions from distinct random start vertices until each
// region reaches fraction0 of the total vertex weight; keeps the region
// with the smallest cut (earliest trial on ties). Region = side 0.
Bisection bfs_initial_bisect(const SimilarityGraph& g, Rng& rng, std::size_t trials = 10,
                             double fraction0 = 0.5);

// Moves best-gain vertices off the overweight side until side 0 lies in
// the window (or no single move reduces the violation). May raise the cut.
Bisection rebalance(const SimilarityGraph& g, Bisection b, const BalanceWindow& window);

struct RefineOptions {
  std::size_t max_passes = 10;
  // A pass ends after this many consecutive moves without a new best prefix.
  std::size_t max_stall_moves = 100;
};

// FM single-vertex-move refinement with best-prefix rollback. The returned
// cut never exceeds the input cut and the balance violation never grows.
// pass_cuts, when given, receives the cut after every pass.
Bisection refine_kl(const SimilarityGraph& g, Bisection b, const BalanceWindow& window,
                    const RefineOptions& options = {}, std::vector<Weight>* pass_cuts = nullptr);

struct MultilevelOptions {
  std::size_t coarsen_until = 100;
  double min_shrink = 0.10;
  std::size_t trials = 10;
  double epsilon = kDefaultEpsilon;
  double fraction0 = 0.5;
  // Overrides the window derived from fraction0 and epsilon when set.
  bool use_window = false;
  BalanceWindow window;
  RefineOptions refine;
  bool collect_trace = false;
};

// Per-level record of one uncoarsening step, for invariant auditing.
struct LevelTrace {
  std::size_t fine_vertices = 0;
  std::size_t coarse_vertices = 0;
  Weight fine_vertex_weight = 0;
  Weight coarse_vertex_weight = 0;
  Weight fine_edge_weight = 0;
  Weight coarse_edge_weight = 0;
  Weight coarse_cut = 0;          // before projection
  Weight projected_cut = 0;       // recomputed on the fine graph before refinement
  std::vector<Weight> pass_cuts;  // after each refinement pass
  Weight refined_cut = 0;
};

struct BisectionTrace {
  std::vector<std::size_t> level_sizes;  // vertex counts, finest first
  Weight initial_cut = 0;                // BFS result on the coarsest graph
  Weight rebalanced_cut = 0;             // after rebalancing, before refinement
  std::vector<Weight> coarsest_pass_cuts;
  std::vector<LevelTrace> levels;        // coarsest step first
  double coarsen_ms = 0.0;
  double init_ms = 0.0;
  double refine_ms = 0.0;
};

Bisection multilevel_bisect(const SimilarityGraph& g, Rng& rng,
                            const MultilevelOptions& options = {},
                            BisectionTrace* trace = nullptr);

struct PartSizeBounds {
  Weight min = 0;
  Weight max = 0;
};

// Allowed part weight: [ceil(floor(W/K)(1-eps)), floor(ceil(W/K)(1+eps))], min >= 1.
PartSizeBounds part_size_bounds(Weight total, std::size_t k, double epsilon);

struct PartitionOptions {
  double epsilon = kDefaultEpsilon;
  std::size_t threads = 0;
  MultilevelOptions bisect;
};

struct PartitionResult {
  Partition partition;
  Weight cut = 0;
  StageTimings timings;  // coarsen, init, refine (summed over bisections), total
  std::vector<BisectionTrace> traces;  // when options.bisect.collect_trace
};

// Recursive bisection into K parts. A node with k parts sends ceil(k/2)
// parts left and floor(k/2) right, with a proportional weight target;
// per-node RNG streams derive from (seed, node path). Throws kInvalidK
// unless 1 <= K <= N.
PartitionResult partition_kway(const SimilarityGraph& g, std::size_t k, std::uint64_t seed,
                               const PartitionOptions& options = {});

}  // namespace fastgas
