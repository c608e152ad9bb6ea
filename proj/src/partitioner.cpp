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

#include "fastgas/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "fastgas/parallel.hpp"

namespace fastgas {

namespace {

constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct GainEntry {
  Weight gain;
  VertexId vertex;
  // Max-heap order: higher gain first, then lower index.
  friend bool operator<(const GainEntry& a, const GainEntry& b) {
    return a.gain < b.gain || (a.gain == b.gain && a.vertex > b.vertex);
  }
};

using GainHeap = std::priority_queue<GainEntry>;

// gain(v) = external weight - internal weight.
std::vector<Weight> compute_gains(const SimilarityGraph& g, const std::vector<std::uint8_t>& side) {
  std::vector<Weight> gains(g.num_vertices(), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    Weight gain = 0;
    for (const auto& nb : g.neighbors(v)) {
      const Weight w = nb.weight;
      gain += side[nb.vertex] != side[v] ? w : -w;
    }
    gains[v] = gain;
  }
  return gains;
}

void check_bisection(const SimilarityGraph& g, const Bisection& b) {
  if (b.side.size() != g.num_vertices()) {
    throw Error(ErrorCode::kInvalidBisection, "bisection has " + std::to_string(b.side.size()) +
                                                  " entries for " +
                                                  std::to_string(g.num_vertices()) + " vertices");
  }
  const Bisection fresh = Bisection::from_sides(g, b.side);
  if (fresh.cut != b.cut || fresh.side_weights != b.side_weights) {
    throw Error(ErrorCode::kInvalidBisection, "stored cut or side weights are stale");
  }
}

// Flips v and updates cut, side weights and neighbor gains.
void apply_move(const SimilarityGraph& g, Bisection& b, std::vector<Weight>& gains, VertexId v) {
  const std::uint8_t from = b.side[v];
  const std::uint8_t to = from ^ 1u;
  const Weight w = g.vertex_weight(v);
  b.side[v] = to;
  b.side_weights[from] -= w;
  b.side_weights[to] += w;
  b.cut -= gains[v];
  gains[v] = -gains[v];
  for (const auto& nb : g.neighbors(v)) {
    const Weight delta = 2 * Weight{nb.weight};
    gains[nb.vertex] += b.side[nb.vertex] == to ? -delta : delta;
  }
}

Weight min_vertex_weight(const SimilarityGraph& g) {
  const auto& w = g.vertex_weights();
  return w.empty() ? 1 : *std::min_element(w.begin(), w.end());
}

}  // namespace

Bisection Bisection::from_sides(const SimilarityGraph& g, std::vector<std::uint8_t> side) {
  if (side.size() != g.num_vertices()) {
    throw Error(ErrorCode::kInvalidBisection, "side vector does not match the graph");
  }
  Bisection b;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (side[v] > 1) throw Error(ErrorCode::kInvalidBisection, "side values must be 0 or 1");
    b.side_weights[side[v]] += g.vertex_weight(v);
    for (const auto& nb : g.neighbors(v)) {
      if (v < nb.vertex && side[v] != side[nb.vertex]) b.cut += nb.weight;
    }
  }
  b.side = std::move(side);
  return b;
}

Partition Bisection::to_partition() const {
  return Partition(std::vector<PartId>(side.begin(), side.end()), 2);
}

BalanceWindow BalanceWindow::around(Weight total, double fraction0, double epsilon) {
  const double target = static_cast<double>(total) * fraction0;
  Weight lo = static_cast<Weight>(std::ceil(target * (1.0 - epsilon) - 1e-9));
  Weight hi = static_cast<Weight>(std::floor(target * (1.0 + epsilon) + 1e-9));
  lo = std::min(lo, static_cast<Weight>(std::floor(target + 1e-9)));
  hi = std::max(hi, static_cast<Weight>(std::ceil(target - 1e-9)));
  return {std::clamp<Weight>(lo, 0, total), std::clamp<Weight>(hi, 0, total)};
}

CoarseningLevel random_matching_coarsen(const SimilarityGraph& g, Rng& rng) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw Error(ErrorCode::kGraphTooSmall, "coarsening needs at least 2 vertices");

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  rng.shuffle(std::span<VertexId>(order));

  std::vector<VertexId> mate(n, kNoVertex);
  std::vector<VertexId> candidates;
  for (VertexId u : order) {
    if (mate[u] != kNoVertex) continue;
    candidates.clear();
    for (const auto& nb : g.neighbors(u)) {
      if (mate[nb.vertex] == kNoVertex) candidates.push_back(nb.vertex);
    }
    if (candidates.empty()) {
      mate[u] = u;
    } else {
      const VertexId v = candidates[rng.uniform_index(candidates.size())];
      mate[u] = v;
      mate[v] = u;
    }
  }

  // Coarse ids follow the lowest fine index of each pair.
  std::vector<VertexId> match_map(n, kNoVertex);
  std::vector<std::array<VertexId, 2>> members;
  members.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    if (match_map[v] != kNoVertex) continue;
    const auto c = static_cast<VertexId>(members.size());
    match_map[v] = c;
    match_map[mate[v]] = c;
    members.push_back({v, mate[v]});
  }

  const std::size_t cn = members.size();
  std::vector<Weight> weights(cn);
  std::vector<std::size_t> offsets(cn + 1, 0);
  std::vector<Neighbor> merged;
  merged.reserve(g.adjacency().size());
  std::vector<Weight> acc(cn, 0);
  std::vector<VertexId> touched;
  for (VertexId c = 0; c < cn; ++c) {
    const auto [a, b] = members[c];
    weights[c] = g.vertex_weight(a) + (b != a ? g.vertex_weight(b) : 0);
    touched.clear();
    auto gather = [&](VertexId fine) {
      for (const auto& nb : g.neighbors(fine)) {
        const VertexId cc = match_map[nb.vertex];
        if (cc == c) continue;
        if (acc[cc] == 0) touched.push_back(cc);
        acc[cc] += nb.weight;
      }
    };
    gather(a);
    if (b != a) gather(b);
    for (VertexId cc : touched) {
      merged.push_back({cc, static_cast<EdgeWeight>(acc[cc])});
      acc[cc] = 0;
    }
    offsets[c + 1] = merged.size();
  }
  // The merged lists are symmetric but unsorted. Transposing them visits
  // sources in ascending order, which sorts every list in linear time.
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  std::vector<Neighbor> adjacency(merged.size());
  for (VertexId c = 0; c < cn; ++c) {
    for (std::size_t i = offsets[c]; i < offsets[c + 1]; ++i) {
      adjacency[fill[merged[i].vertex]++] = {c, merged[i].weight};
    }
  }
  return {SimilarityGraph::from_csr_unchecked(std::move(offsets), std::move(adjacency),
                                              std::move(weights), g.level() + 1),
          std::move(match_map)};
}

Bisection project_bisection(const CoarseningLevel& level, const SimilarityGraph& fine,
                            const Bisection& coarse) {
  if (level.match_map.size() != fine.num_vertices() ||
      coarse.side.size() != level.graph.num_vertices()) {
    throw Error(ErrorCode::kInvalidBisection, "projection sizes do not match");
  }
  Bisection out;
  out.side.resize(fine.num_vertices());
  for (std::size_t v = 0; v < out.side.size(); ++v) out.side[v] = coarse.side[level.match_map[v]];
  out.cut = coarse.cut;
  out.side_weights = coarse.side_weights;
  return out;
}

Bisection bfs_initial_bisect(const SimilarityGraph& g, Rng& rng, std::size_t trials,
                             double fraction0) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw Error(ErrorCode::kGraphTooSmall, "bisection needs at least 2 vertices");
  trials = std::clamp<std::size_t>(trials, 1, n);
  const double target = static_cast<double>(g.total_vertex_weight()) * fraction0;

  std::vector<VertexId> pool(n);
  std::iota(pool.begin(), pool.end(), VertexId{0});
  for (std::size_t i = 0; i < trials; ++i) {
    std::swap(pool[i], pool[i + rng.uniform_index(n - i)]);
  }

  Bisection best;
  bool have_best = false;
  std::vector<std::uint8_t> visited(n);
  std::deque<VertexId> queue;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::uint8_t> side(n, 1);
    std::fill(visited.begin(), visited.end(), 0);
    queue.clear();
    queue.push_back(pool[t]);
    visited[pool[t]] = 1;
    VertexId next_unvisited = 0;
    Weight region = 0;
    while (static_cast<double>(region) < target) {
      if (queue.empty()) {
        // Disconnected graph: continue from the lowest unvisited vertex.
        while (next_unvisited < n && visited[next_unvisited]) ++next_unvisited;
        if (next_unvisited == n) break;
        visited[next_unvisited] = 1;
        queue.push_back(next_unvisited);
      }
      const VertexId v = queue.front();
      queue.pop_front();
      side[v] = 0;
      region += g.vertex_weight(v);
      for (const auto& nb : g.neighbors(v)) {
        if (!visited[nb.vertex]) {
          visited[nb.vertex] = 1;
          queue.push_back(nb.vertex);
        }
      }
    }
    Bisection candidate = Bisection::from_sides(g, std::move(side));
    if (!have_best || candidate.cut < best.cut) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

Bisection rebalance(const SimilarityGraph& g, Bisection b, const BalanceWindow& window) {
  check_bisection(g, b);
  std::vector<Weight> gains = compute_gains(g, b.side);
  while (true) {
    const Weight violation = window.violation(b.side_weights[0]);
    if (violation == 0) break;
    const std::uint8_t from = b.side_weights[0] > window.max0 ? 0 : 1;
    GainHeap heap;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (b.side[v] == from) heap.push({gains[v], v});
    }
    bool moved = false;
    while (!heap.empty() && window.violation(b.side_weights[0]) > 0) {
      const GainEntry top = heap.top();
      heap.pop();
      const VertexId v = top.vertex;
      if (b.side[v] != from || gains[v] != top.gain) continue;
      const Weight w = g.vertex_weight(v);
      const Weight next_w0 = b.side_weights[0] + (from == 0 ? -w : w);
      if (window.violation(next_w0) >= window.violation(b.side_weights[0])) continue;
      apply_move(g, b, gains, v);
      moved = true;
      for (const auto& nb : g.neighbors(v)) {
        if (b.side[nb.vertex] == from) heap.push({gains[nb.vertex], nb.vertex});
      }
      // Overshot into the opposite violation: restart from the other side.
      if (window.violation(b.side_weights[0]) > 0 &&
          (b.side_weights[0] > window.max0 ? 0 : 1) != from) {
        break;
      }
    }
    if (!moved) break;
  }
  return b;
}

Bisection refine_kl(const SimilarityGraph& g, Bisection b, const BalanceWindow& window,
                    const RefineOptions& options, std::vector<Weight>* pass_cuts) {
  check_bisection(g, b);
  const std::size_t n = g.num_vertices();
  const Weight lightest = min_vertex_weight(g);
  const Weight slack = g.vertex_weights().empty()
                           ? 0
                           : *std::max_element(g.vertex_weights().begin(), g.vertex_weights().end());
  std::vector<std::uint8_t> locked(n);
  std::vector<VertexId> moves;

  for (std::size_t pass = 0; pass < options.max_passes; ++pass) {
    std::vector<Weight> gains = compute_gains(g, b.side);
    std::fill(locked.begin(), locked.end(), 0);
    std::array<GainHeap, 2> heaps;
    std::array<std::vector<GainEntry>, 2> deferred;
    for (VertexId v = 0; v < n; ++v) heaps[b.side[v]].push({gains[v], v});

    const Weight start_cut = b.cut;
    Weight best_cut = b.cut;
    Weight best_violation = window.violation(b.side_weights[0]);
    std::size_t best_len = 0;
    std::size_t stall = 0;
    moves.clear();

    // Moves may leave the window by up to one heaviest vertex so that
    // tight windows still admit swaps; the kept prefix is never less balanced.
    auto allowed = [&](VertexId v, std::uint8_t from) {
      const Weight w = g.vertex_weight(v);
      const Weight next_w0 = b.side_weights[0] + (from == 0 ? -w : w);
      const Weight next = window.violation(next_w0);
      return next <= slack || next < window.violation(b.side_weights[0]);
    };

    while (true) {
      std::array<bool, 2> has{false, false};
      std::array<GainEntry, 2> cand{};
      for (std::uint8_t s = 0; s < 2; ++s) {
        auto& heap = heaps[s];
        while (!heap.empty()) {
          const GainEntry top = heap.top();
          if (locked[top.vertex] || b.side[top.vertex] != s || gains[top.vertex] != top.gain) {
            heap.pop();
            continue;
          }
          if (allowed(top.vertex, s)) {
            cand[s] = top;
            has[s] = true;
            break;
          }
          // Every vertex on this side is at least as heavy: the side is blocked.
          if (g.vertex_weight(top.vertex) == lightest) break;
          heap.pop();
          deferred[s].push_back(top);
        }
      }
      if (!has[0] && !has[1]) break;
      const std::uint8_t from = (has[0] && (!has[1] || cand[1] < cand[0])) ? 0 : 1;
      const VertexId v = cand[from].vertex;
      heaps[from].pop();
      apply_move(g, b, gains, v);
      locked[v] = 1;
      moves.push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        if (!locked[nb.vertex]) heaps[b.side[nb.vertex]].push({gains[nb.vertex], nb.vertex});
      }
      // Side 0 weight moved; entries blocked on the other side may now fit.
      const std::uint8_t other = from ^ 1u;
      for (const auto& e : deferred[other]) heaps[other].push(e);
      deferred[other].clear();

      const Weight violation = window.violation(b.side_weights[0]);
      if (b.cut <= start_cut &&
          (violation < best_violation || (violation == best_violation && b.cut < best_cut))) {
        best_cut = b.cut;
        best_violation = violation;
        best_len = moves.size();
        stall = 0;
      } else if (++stall >= options.max_stall_moves) {
        break;
      }
    }

    // Roll back to the best prefix.
    for (std::size_t i = moves.size(); i > best_len; --i) {
      const VertexId v = moves[i - 1];
      const Weight w = g.vertex_weight(v);
      b.side_weights[b.side[v]] -= w;
      b.side[v] ^= 1u;
      b.side_weights[b.side[v]] += w;
    }
    b.cut = best_cut;
    if (pass_cuts) pass_cuts->push_back(b.cut);
    if (best_len == 0) break;
  }
  return b;
}

Bisection multilevel_bisect(const SimilarityGraph& g, Rng& rng, const MultilevelOptions& options,
                            BisectionTrace* trace) {
  if (g.num_vertices() < 2) {
    throw Error(ErrorCode::kGraphTooSmall, "bisection needs at least 2 vertices");
  }
  const BalanceWindow window =
      options.use_window ? options.window
                         : BalanceWindow::around(g.total_vertex_weight(), options.fraction0,
                                                 options.epsilon);
  BisectionTrace local;
  BisectionTrace& tr = trace ? *trace : local;
  tr = BisectionTrace{};
  tr.level_sizes.push_back(g.num_vertices());

  Stopwatch sw;
  std::vector<CoarseningLevel> levels;
  const SimilarityGraph* current = &g;
  while (current->num_vertices() > options.coarsen_until) {
    CoarseningLevel next = random_matching_coarsen(*current, rng);
    const double limit = (1.0 - options.min_shrink) * static_cast<double>(current->num_vertices());
    if (static_cast<double>(next.graph.num_vertices()) > limit) break;
    levels.push_back(std::move(next));
    current = &levels.back().graph;
    tr.level_sizes.push_back(current->num_vertices());
  }
  tr.coarsen_ms += sw.elapsed_ms();

  sw.reset();
  // Aim the region at the window's clamp of the proportional target.
  const double total = static_cast<double>(current->total_vertex_weight());
  const double target =
      std::clamp(total * options.fraction0, static_cast<double>(window.min0),
                 static_cast<double>(window.max0));
  Bisection b = bfs_initial_bisect(*current, rng, options.trials, target / total);
  tr.initial_cut = b.cut;
  b = rebalance(*current, std::move(b), window);
  tr.rebalanced_cut = b.cut;
  tr.init_ms += sw.elapsed_ms();

  sw.reset();
  b = refine_kl(*current, std::move(b), window, options.refine,
                options.collect_trace ? &tr.coarsest_pass_cuts : nullptr);
  tr.refine_ms += sw.elapsed_ms();

  for (std::size_t i = levels.size(); i > 0; --i) {
    sw.reset();
    const SimilarityGraph& fine = i == 1 ? g : levels[i - 2].graph;
    const CoarseningLevel& level = levels[i - 1];
    LevelTrace lt;
    if (options.collect_trace) {
      lt.fine_vertices = fine.num_vertices();
      lt.coarse_vertices = level.graph.num_vertices();
      lt.fine_vertex_weight = fine.total_vertex_weight();
      lt.coarse_vertex_weight = level.graph.total_vertex_weight();
      lt.fine_edge_weight = fine.total_edge_weight();
      lt.coarse_edge_weight = level.graph.total_edge_weight();
      lt.coarse_cut = b.cut;
    }
    b = project_bisection(level, fine, b);
    if (options.collect_trace) lt.projected_cut = Bisection::from_sides(fine, b.side).cut;
    b = refine_kl(fine, std::move(b), window, options.refine,
                  options.collect_trace ? &lt.pass_cuts : nullptr);
    if (options.collect_trace) {
      lt.refined_cut = b.cut;
      tr.levels.push_back(std::move(lt));
    }
    tr.refine_ms += sw.elapsed_ms();
  }

  if (!window.contains(b.side_weights[0])) {
    sw.reset();
    b = rebalance(g, std::move(b), window);
    b = refine_kl(g, std::move(b), window, options.refine);
    tr.refine_ms += sw.elapsed_ms();
  }
  return b;
}

PartSizeBounds part_size_bounds(Weight total, std::size_t k, double epsilon) {
  const Weight kk = static_cast<Weight>(k);
  const Weight floor_avg = total / kk;
  const Weight ceil_avg = (total + kk - 1) / kk;
  PartSizeBounds bounds;
  bounds.max = static_cast<Weight>(
      std::floor(static_cast<double>(ceil_avg) * (1.0 + epsilon) + 1e-9));
  bounds.min = std::max<Weight>(
      1, static_cast<Weight>(std::ceil(static_cast<double>(floor_avg) * (1.0 - epsilon) - 1e-9)));
  return bounds;
}

namespace {

struct PartTask {
  std::vector<VertexId> vertices;  // original indices, ascending
  std::size_t parts = 1;
  PartId first_part = 0;
  std::uint64_t node = 1;  // heap-style path id: children are 2n and 2n+1
};

struct TaskOutcome {
  std::vector<PartTask> children;
  BisectionTrace trace;
};

}  // namespace

PartitionResult partition_kway(const SimilarityGraph& g, std::size_t k, std::uint64_t seed,
                               const PartitionOptions& options) {
  const std::size_t n = g.num_vertices();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidK,
                "K must satisfy 1 <= K <= N (K=" + std::to_string(k) + ", N=" + std::to_string(n) + ")");
  }
  Stopwatch total_sw;
  PartitionResult result;
  std::vector<PartId> assignment(n, 0);
  const PartSizeBounds bounds = part_size_bounds(g.total_vertex_weight(), k, options.epsilon);

  std::vector<PartTask> frontier;
  {
    PartTask root;
    root.vertices.resize(n);
    std::iota(root.vertices.begin(), root.vertices.end(), VertexId{0});
    root.parts = k;
    frontier.push_back(std::move(root));
  }

  double coarsen_ms = 0.0, init_ms = 0.0, refine_ms = 0.0;
  while (!frontier.empty()) {
    std::vector<TaskOutcome> outcomes(frontier.size());
    parallel_for(frontier.size(), options.threads, [&](std::size_t i) {
      const PartTask& task = frontier[i];
      if (task.parts == 1) {
        for (VertexId v : task.vertices) assignment[v] = task.first_part;
        return;
      }
      const std::size_t left_parts = (task.parts + 1) / 2;
      const std::size_t right_parts = task.parts / 2;
      InducedSubgraph sub = induced_subgraph(g, task.vertices);
      const Weight w = sub.graph.total_vertex_weight();
      const Weight lp = static_cast<Weight>(left_parts);
      const Weight rp = static_cast<Weight>(right_parts);

      MultilevelOptions mopts = options.bisect;
      mopts.fraction0 = static_cast<double>(left_parts) / static_cast<double>(task.parts);
      mopts.use_window = true;
      mopts.window.min0 = std::max(lp * bounds.min, w - rp * bounds.max);
      mopts.window.max0 = std::min(lp * bounds.max, w - rp * bounds.min);

      Rng rng(derive_seed(seed, {task.node}));
      const Bisection b = multilevel_bisect(sub.graph, rng, mopts, &outcomes[i].trace);

      PartTask left, right;
      for (std::size_t v = 0; v < b.side.size(); ++v) {
        (b.side[v] == 0 ? left : right).vertices.push_back(sub.to_original[v]);
      }
      if (left.vertices.size() < left_parts || right.vertices.size() < right_parts) {
        throw Error(ErrorCode::kInternalError, "bisection left a side with too few vertices");
      }
      left.parts = left_parts;
      left.first_part = task.first_part;
      left.node = 2 * task.node;
      right.parts = right_parts;
      right.first_part = task.first_part + static_cast<PartId>(left_parts);
      right.node = 2 * task.node + 1;
      outcomes[i].children.push_back(std::move(left));
      outcomes[i].children.push_back(std::move(right));
    });

    std::vector<PartTask> next;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      auto& out = outcomes[i];
      if (out.children.empty()) continue;
      coarsen_ms += out.trace.coarsen_ms;
      init_ms += out.trace.init_ms;
      refine_ms += out.trace.refine_ms;
      if (options.bisect.collect_trace) result.traces.push_back(std::move(out.trace));
      for (auto& child : out.children) next.push_back(std::move(child));
    }
    frontier = std::move(next);
  }

  result.partition = Partition(std::move(assignment), k);
  result.cut = edge_cut(g, result.partition);
  result.timings["coarsen"] = coarsen_ms;
  result.timings["init"] = init_ms;
  result.timings["refine"] = refine_ms;
  result.timings["total"] = total_sw.elapsed_ms();
  return result;
}

}  // namespace fastgas
