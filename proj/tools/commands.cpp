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

#include "commands.hpp"

#include <filesystem>
#include <iostream>
#include <optional>

#include "fastgas/embedding.hpp"
#include "fastgas/partitioner.hpp"
#include "fastgas/retrieval.hpp"
#include "fastgas/selector.hpp"
#include "fastgas/serialize.hpp"

namespace fastgas::cli {

namespace {

void emit(const RunConfig& config, const Json& doc) {
  if (config.output.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_json_file(config.output, doc);
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidParameter, message);
}

struct LoadedGraph {
  SimilarityGraph graph;
  std::optional<EmbeddingMatrix> embeddings;
  StageTimings timings;
};

std::optional<EmbeddingMatrix> load_input(const RunConfig& config, StageTimings& timings) {
  if (config.input.empty()) return std::nullopt;
  Stopwatch sw;
  EmbeddingMatrix m = load_embeddings(config.input, parse_embedding_format(config.format));
  timings["embed_load"] = sw.elapsed_ms();
  return m;
}

// A prebuilt graph (--graph) takes priority; otherwise the kNN graph is
// built from --input.
LoadedGraph load_graph(const RunConfig& config) {
  LoadedGraph out;
  out.embeddings = load_input(config, out.timings);
  if (!config.graph.empty()) {
    out.graph = graph_from_json(read_json_file(config.graph));
    if (out.embeddings && out.embeddings->size() != out.graph.num_vertices()) {
      throw Error(ErrorCode::kDimensionMismatch, "graph and embeddings differ in vertex count");
    }
    return out;
  }
  require(out.embeddings.has_value(), "either --graph or --input is required");
  Stopwatch sw;
  out.graph = build_knn_graph(*out.embeddings, config.k, config.threads);
  out.timings["knn"] = sw.elapsed_ms();
  return out;
}

}  // namespace

int cmd_generate(const RunConfig& config) {
  require(!config.output.empty(), "generate needs --output");
  const SyntheticPool pool =
      generate_synthetic(config.n, config.dim, config.clusters, config.spread, config.seed);
  save_embeddings(pool.matrix, config.output, parse_embedding_format(config.format));
  std::cerr << "wrote " << pool.matrix.size() << " x " << pool.matrix.dim() << " embeddings to "
            << config.output << "\n";
  return 0;
}

int cmd_build_graph(const RunConfig& config) {
  require(!config.input.empty(), "build-graph needs --input");
  StageTimings timings;
  const auto embeddings = load_input(config, timings);
  Stopwatch sw;
  const SimilarityGraph g = build_knn_graph(*embeddings, config.k, config.threads);
  const double build_ms = sw.elapsed_ms();
  emit(config, graph_to_json(g, config.k));
  std::cerr << "N=" << g.num_vertices() << " |E|=" << g.num_edges() << " build_ms=" << build_ms
            << "\n";
  return 0;
}

int cmd_partition(const RunConfig& config) {
  require(config.num_parts >= 1, "partition needs --K >= 1");
  const LoadedGraph loaded = load_graph(config);
  PartitionOptions opts;
  opts.epsilon = config.epsilon;
  opts.threads = config.threads;
  const PartitionResult result = partition_kway(loaded.graph, config.num_parts, config.seed, opts);
  emit(config, partition_to_json(result, config.seed, !config.no_timings));
  return 0;
}

int cmd_select(const RunConfig& config) {
  Stopwatch total;
  require(config.budget >= 1, "select needs --budget >= 1");
  const std::string& method = config.method;
  SelectionResult result;
  StageTimings stages;
  std::vector<std::string> ids;

  if (method == "random" && config.graph.empty()) {
    const auto embeddings = load_input(config, stages);
    require(embeddings.has_value(), "random selection needs --input or --graph");
    ids = embeddings->ids();
    result = random_select(embeddings->size(), config.budget, config.seed);
  } else if (method == "subcluster") {
    const auto embeddings = load_input(config, stages);
    require(embeddings.has_value(), "subcluster selection needs --input");
    require(config.num_parts >= 1, "subcluster selection needs --K");
    ids = embeddings->ids();
    result = subcluster_select(*embeddings, config.num_parts, config.budget, config.seed,
                               config.max_iters == 0 ? 100 : config.max_iters);
  } else {
    LoadedGraph loaded = load_graph(config);
    stages = loaded.timings;
    if (loaded.embeddings) ids = loaded.embeddings->ids();
    const SimilarityGraph& g = loaded.graph;
    if (method == "fastgas") {
      require(config.num_parts >= 1, "--method fastgas needs --K");
      FastgasOptions opts;
      opts.epsilon = config.epsilon;
      opts.threads = config.threads;
      result = fastgas_select(g, config.num_parts, config.budget, config.seed, opts);
    } else if (method == "random") {
      result = random_select(g.num_vertices(), config.budget, config.seed);
    } else if (method == "top-degree") {
      result = top_degree_select(g, config.budget);
    } else if (method == "pagerank") {
      PageRankOptions opts;
      opts.damping = config.damping;
      opts.tolerance = config.tolerance;
      opts.max_iters = config.max_iters == 0 ? 200 : config.max_iters;
      result = pagerank_select(g, config.budget, opts);
    } else {
      throw Error(ErrorCode::kInvalidParameter, "unknown method '" + method + "'");
    }
  }
  for (const auto& [stage, ms] : stages) result.timings[stage] = ms;
  result.timings["total"] = total.elapsed_ms();
  emit(config, selection_to_json(result, ids, !config.no_timings));
  return 0;
}

int cmd_retrieve(const RunConfig& config) {
  require(!config.input.empty(), "retrieve needs --input (the pool embeddings)");
  require(!config.selection.empty(), "retrieve needs --selection");
  const EmbeddingMatrix pool = load_embeddings(config.input, parse_embedding_format(config.format));
  const SelectionResult sel = selection_from_json(read_json_file(config.selection));
  std::vector<std::size_t> selected(sel.selected.begin(), sel.selected.end());

  std::optional<EmbeddingMatrix> tests;
  if (!config.tests.empty()) {
    const std::string fmt = config.tests_format.empty() ? config.format : config.tests_format;
    tests = load_embeddings(config.tests, parse_embedding_format(fmt));
  }
  const RetrievalMode mode = parse_retrieval_mode(config.mode);
  RetrievalPlan plan;
  if (mode == RetrievalMode::kSimilar) {
    require(tests.has_value(), "similar retrieval needs --tests");
    plan = retrieve_similar(pool, selected, *tests, config.m, parse_prompt_order(config.order),
                            config.threads);
  } else {
    const std::size_t count = tests ? tests->size() : config.num_tests;
    require(count >= 1, "random retrieval needs --tests or --num-tests");
    plan = retrieve_random(selected, count, config.m, config.seed);
    if (tests) plan.test_ids = tests->ids();
  }
  emit(config, retrieval_to_json(plan, pool.ids()));
  return 0;
}

int cmd_bench(const RunConfig& config) {
  BenchConfig bc;
  bc.sizes = config.sizes;
  bc.dim = config.dim;
  bc.clusters = config.clusters;
  bc.spread = config.spread;
  bc.k = config.k;
  bc.num_parts = config.num_parts == 0 ? 10 : config.num_parts;
  bc.budget = config.budget == 0 ? 100 : config.budget;
  bc.seed = config.seed;
  bc.repeats = config.repeats;
  bc.threads = config.threads;
  bc.epsilon = config.epsilon;
  const BenchReport report = run_bench(bc);
  emit(config, bench_to_json(report, !config.no_timings));
  std::string csv_path = config.csv;
  if (csv_path.empty() && !config.output.empty()) {
    csv_path = std::filesystem::path(config.output).replace_extension(".csv").string();
  }
  if (!csv_path.empty() && !config.no_timings) write_text_file(csv_path, bench_to_csv(report));
  for (std::size_t i = 0; i < report.doubling_ratios.size(); ++i) {
    std::cerr << "fastgas " << report.rows[i].n << " -> " << report.rows[i + 1].n
              << " ratio=" << report.doubling_ratios[i] << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& config) {
  VerifyConfig vc;
  vc.max_n = config.max_n;
  vc.max_budget = config.max_budget;
  vc.instances = config.instances;
  vc.seed = config.seed;
  const VerifyReport report = run_verify(vc);
  emit(config, verify_to_json(report, !config.no_timings));
  std::cerr << "instances=" << report.instances << " exact_rate=" << report.exact_rate()
            << " min_ratio=" << report.min_ratio << " counterexamples="
            << report.counterexamples.size() << "\n";
  if (report.bound_violations > 0 || report.argmax_violations > 0) {
    throw Error(ErrorCode::kInternalError,
                std::to_string(report.bound_violations) + " (1-1/e) bound violations, " +
                    std::to_string(report.argmax_violations) + " argmax violations");
  }
  return 0;
}

}  // namespace fastgas::cli
