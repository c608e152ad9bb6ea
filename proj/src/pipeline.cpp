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

#include "fastgas/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fastgas/random.hpp"
#include "fastgas/selector.hpp"

namespace fastgas {

namespace {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

const char* const kFastgasStages[] = {"coarsen", "init_bisect", "refine", "partition_total",
                                      "select", "fastgas_total"};

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  if (config.sizes.empty()) throw Error(ErrorCode::kInvalidParameter, "bench needs at least one size");
  if (config.repeats < 1) throw Error(ErrorCode::kInvalidParameter, "repeats must be >= 1");
  BenchReport report;
  report.config = config;
  for (std::size_t n : config.sizes) {
    BenchRow row;
    row.n = n;
    Stopwatch sw;
    const SyntheticPool pool =
        generate_synthetic(n, config.dim, std::min(config.clusters, n), config.spread,
                           derive_seed(config.seed, {n}));
    row.generate_ms = sw.elapsed_ms();

    sw.reset();
    const SimilarityGraph g = build_knn_graph(pool.matrix, config.k, config.threads);
    row.knn_ms = sw.elapsed_ms();
    row.edges = g.num_edges();

    FastgasOptions fopts;
    fopts.epsilon = config.epsilon;
    fopts.threads = config.threads;
    std::map<std::string, std::vector<double>> samples;
    for (std::size_t r = 0; r < config.repeats; ++r) {
      SelectionResult sel = fastgas_select(g, config.num_parts, config.budget, config.seed, fopts);
      sel.timings["fastgas_total"] = sel.timings["partition_total"] + sel.timings["select"];
      for (const char* stage : kFastgasStages) samples[stage].push_back(sel.timings[stage]);
      if (r == 0) row.selections["fastgas"] = sel.selected;
    }
    for (const char* stage : kFastgasStages) row.fastgas[stage] = median(samples[stage]);

    auto record = [&](const SelectionResult& sel) {
      row.baselines[sel.method] = sel.timings.at("total");
      row.selections[sel.method] = sel.selected;
    };
    record(random_select(n, config.budget, config.seed));
    record(top_degree_select(g, config.budget));
    record(pagerank_select(g, config.budget));
    record(subcluster_select(pool.matrix, config.num_parts, config.budget, config.seed));
    report.rows.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const double prev = report.rows[i - 1].fastgas.at("fastgas_total");
    const double cur = report.rows[i].fastgas.at("fastgas_total");
    const double ratio = prev > 0.0 ? cur / prev : 0.0;
    report.doubling_ratios.push_back(ratio);
    report.max_doubling_ratio = std::max(report.max_doubling_ratio, ratio);
  }
  return report;
}

Json bench_to_json(const BenchReport& report, bool include_timings) {
  const auto& c = report.config;
  Json doc;
  doc["config"] = {{"sizes", c.sizes},   {"dim", c.dim},          {"clusters", c.clusters},
                   {"spread", c.spread}, {"k", c.k},              {"K", c.num_parts},
                   {"budget", c.budget}, {"seed", c.seed},        {"repeats", c.repeats},
                   {"epsilon", c.epsilon}};
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r;
    r["n"] = row.n;
    r["edges"] = row.edges;
    if (include_timings) {
      r["timings_ms"] = {{"generate", row.generate_ms}, {"knn", row.knn_ms}};
      for (const auto& [stage, ms] : row.fastgas) r["timings_ms"]["fastgas"][stage] = ms;
      for (const auto& [method, ms] : row.baselines) r["timings_ms"]["baselines"][method] = ms;
    }
    Json sels = Json::object();
    for (const auto& [method, picks] : row.selections) sels[method] = picks;
    r["selections"] = std::move(sels);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  if (include_timings) {
    doc["fastgas_doubling_ratios"] = report.doubling_ratios;
    doc["fastgas_max_doubling_ratio"] = report.max_doubling_ratio;
  }
  return doc;
}

std::string bench_to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "n,edges,generate_ms,knn_ms";
  for (const char* stage : kFastgasStages) out << (std::string(stage).rfind("fastgas", 0) == 0 ? "," : ",fastgas_") << stage << "_ms";
  out << ",random_ms,top_degree_ms,pagerank_ms,subcluster_ms\n";
  for (const auto& row : report.rows) {
    out << row.n << ',' << row.edges << ',' << row.generate_ms << ',' << row.knn_ms;
    for (const char* stage : kFastgasStages) out << ',' << row.fastgas.at(stage);
    for (const char* method : {"random", "top-degree", "pagerank", "subcluster"}) {
      auto it = row.baselines.find(method);
      out << ',' << (it == row.baselines.end() ? 0.0 : it->second);
    }
    out << '\n';
  }
  return out.str();
}

SimilarityGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<WeightedEdge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) edges.push_back({u, v, 1});
    }
  }
  return SimilarityGraph::from_edges(n, edges);
}

namespace {

SimilarityGraph path_graph(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1});
  return SimilarityGraph::from_edges(n, edges);
}

// Residual degrees after removing `removed`, counted from the edge list.
std::vector<long> residual_degrees(const SimilarityGraph& g, const std::vector<std::uint8_t>& removed) {
  std::vector<long> deg(g.num_vertices(), 0);
  for (const auto& e : g.edges()) {
    if (!removed[e.u] && !removed[e.v]) {
      ++deg[e.u];
      ++deg[e.v];
    }
  }
  return deg;
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& config) {
  if (config.max_n > kMaxBruteForceVertices || config.max_n < 2) {
    throw Error(ErrorCode::kInvalidParameter, "max_n must lie in [2, 24]");
  }
  if (config.max_budget < 1) throw Error(ErrorCode::kInvalidParameter, "max_budget must be >= 1");
  constexpr double kBound = 1.0 - 0.36787944117144233;  // 1 - 1/e
  const double probabilities[] = {0.2, 0.5, 0.8};
  Stopwatch sw;
  VerifyReport report;
  Rng rng(derive_seed(config.seed, {0x7665726966ULL}));
  for (std::size_t inst = 0; inst < config.instances; ++inst) {
    SimilarityGraph g;
    std::size_t budget;
    double p = 0.0;
    if (inst == 0) {
      g = path_graph(5);
      budget = 2;
    } else {
      const std::size_t n = 2 + rng.uniform_index(config.max_n - 1);
      p = probabilities[inst % 3];
      g = random_graph(n, p, derive_seed(config.seed, {inst}));
      budget = 1 + rng.uniform_index(std::min(config.max_budget, n));
    }
    const auto trace = greedy_select_trace(g, budget);
    std::vector<VertexId> picks;
    std::vector<std::uint8_t> removed(g.num_vertices(), 0);
    for (const auto& pick : trace) {
      const auto deg = residual_degrees(g, removed);
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (!removed[v] && deg[v] > deg[pick.vertex]) {
          ++report.argmax_violations;
          break;
        }
      }
      ++report.greedy_picks;
      removed[pick.vertex] = 1;
      picks.push_back(pick.vertex);
    }
    const std::size_t greedy_value = coverage_objective(g, picks);
    const CoverageOptimum opt = brute_force_max_coverage(g, budget);
    const double ratio = opt.value == 0 ? 1.0 : static_cast<double>(greedy_value) / opt.value;
    report.min_ratio = std::min(report.min_ratio, ratio);
    if (ratio + 1e-12 < kBound) ++report.bound_violations;
    if (greedy_value == opt.value) {
      ++report.exact_optimal;
    } else {
      Json edges = Json::array();
      for (const auto& e : g.edges()) edges.push_back(Json::array({e.u, e.v}));
      report.counterexamples.push_back({{"instance", inst},
                                        {"num_vertices", g.num_vertices()},
                                        {"edge_probability", p},
                                        {"budget", budget},
                                        {"edges", std::move(edges)},
                                        {"greedy", picks},
                                        {"greedy_value", greedy_value},
                                        {"optimum", opt.set},
                                        {"optimum_value", opt.value}});
    }
    ++report.instances;
  }
  report.elapsed_ms = sw.elapsed_ms();
  return report;
}

Json verify_to_json(const VerifyReport& report, bool include_timings) {
  Json doc;
  doc["instances"] = report.instances;
  doc["exact_optimal"] = report.exact_optimal;
  doc["exact_rate"] = report.exact_rate();
  doc["min_ratio"] = report.min_ratio;
  doc["bound"] = 1.0 - 0.36787944117144233;
  doc["bound_violations"] = report.bound_violations;
  doc["greedy_picks"] = report.greedy_picks;
  doc["argmax_violations"] = report.argmax_violations;
  doc["counterexamples"] = report.counterexamples;
  if (include_timings) doc["timings_ms"] = {{"total", report.elapsed_ms}};
  return doc;
}

}  // namespace fastgas
