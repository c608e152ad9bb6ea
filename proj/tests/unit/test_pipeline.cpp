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

#include <cmath>
#include <sstream>

#include <doctest.h>

#include "fastgas/pipeline.hpp"
#include "fastgas/selector.hpp"
#include "test_util.hpp"

using namespace fastgas;
using fastgas::testing::error_code_of;

TEST_CASE("verify audit") {
  VerifyConfig config;
  config.instances = 200;
  config.seed = 3;
  const auto report = run_verify(config);
  CHECK(report.instances == 200);
  CHECK(report.bound_violations == 0);
  CHECK(report.argmax_violations == 0);
  CHECK(report.min_ratio >= 1.0 - std::exp(-1.0));
  CHECK(report.exact_optimal + report.counterexamples.size() == 200);
  for (const auto& c : report.counterexamples) {
    CHECK(c["instance"] != 0);  // the P5 fixture is solved exactly
    CHECK(c["greedy_value"].get<std::size_t>() < c["optimum_value"].get<std::size_t>());
    const auto g = testing::graph_of(c["num_vertices"], c["edges"].get<std::vector<std::pair<VertexId, VertexId>>>());
    const auto picks = c["greedy"].get<std::vector<VertexId>>();
    CHECK(greedy_select(g, picks.size()) == picks);
    CHECK(brute_force_max_coverage(g, picks.size()).value == c["optimum_value"]);
  }
  const Json doc = verify_to_json(report, false);
  CHECK_FALSE(doc.contains("timings_ms"));
  CHECK(doc["instances"] == 200);
  CHECK(verify_to_json(run_verify(config), false) == doc);

  config.max_n = 25;
  CHECK(error_code_of([&] { run_verify(config); }) == ErrorCode::kInvalidParameter);
}

TEST_CASE("greedy is exact when the budget covers every vertex") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = random_graph(2 + s % 10, 0.5, s);
    const std::size_t n = g.num_vertices();
    CHECK(coverage_objective(g, greedy_select(g, n)) == brute_force_max_coverage(g, n).value);
    CHECK(coverage_objective(g, greedy_select(g, n)) == g.num_edges());
  }
}

TEST_CASE("bench report") {
  BenchConfig config;
  config.sizes = {200, 400};
  config.dim = 16;
  config.clusters = 4;
  config.num_parts = 4;
  config.budget = 20;
  config.repeats = 2;
  const auto report = run_bench(config);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.doubling_ratios.size() == 1);
  for (const auto& row : report.rows) {
    for (const char* m : {"fastgas", "random", "top-degree", "pagerank", "subcluster"}) {
      REQUIRE(row.selections.count(m) == 1);
      CHECK(row.selections.at(m).size() == 20);
    }
    CHECK(row.baselines.size() == 4);
    CHECK(row.fastgas.at("fastgas_total") >= row.fastgas.at("select"));
  }
  const auto again = run_bench(config);
  CHECK(bench_to_json(again, false) == bench_to_json(report, false));

  const std::string csv = bench_to_csv(report);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header.find("fastgas_total_ms") != std::string::npos);
  CHECK(header.find("pagerank_ms") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  config.sizes.clear();
  CHECK(error_code_of([&] { run_bench(config); }) == ErrorCode::kInvalidParameter);
}
