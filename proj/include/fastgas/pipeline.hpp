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

// Scaling benchmark and greedy-coverage audit harnesses shared by the
// command-line tool, the Python module and the acceptance suite.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fastgas/serialize.hpp"
#include "fastgas/similarity_graph.hpp"

namespace fastgas {

struct BenchConfig {
  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000};
  std::size_t dim = 768;
  std::size_t clusters = 10;
  double spread = 0.1;
  std::size_t k = 10;
  std::size_t num_parts = 10;
  std::size_t budget = 100;
  std::uint64_t seed = 0;
  std::size_t repeats = 5;  // FastGAS timings are medians over this many runs
  std::size_t threads = 0;
  double epsilon = 0.03;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t edges = 0;
  double generate_ms = 0.0;
  double knn_ms = 0.0;
  // Median FastGAS stage times: coarsen, init_bisect, refine,
  // partition_total, select, and fastgas_total = partition_total + select.
  StageTimings fastgas;
  StageTimings baselines;  // method -> ms
  std::map<std::string, std::vector<VertexId>> selections;  // method -> picks
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;
  // fastgas_total(n_{i+1}) / fastgas_total(n_i) for consecutive sizes.
  std::vector<double> doubling_ratios;
  double max_doubling_ratio = 0.0;
};

BenchReport run_bench(const BenchConfig& config);
Json bench_to_json(const BenchReport& report, bool include_timings);
std::string bench_to_csv(const BenchReport& report);

struct VerifyConfig {
  std::size_t max_n = 12;
  std::size_t max_budget = 4;
  std::size_t instances = 500;
  std::uint64_t seed = 0;
};

struct VerifyReport {
  std::size_t instances = 0;
  std::size_t exact_optimal = 0;
  double min_ratio = 1.0;
  std::size_t bound_violations = 0;   // greedy < (1 - 1/e) * optimum
  std::size_t argmax_violations = 0;  // a pick's residual degree below some remaining vertex
  std::size_t greedy_picks = 0;
  Json counterexamples = Json::array();  // instances where greedy < optimum
  double elapsed_ms = 0.0;

  double exact_rate() const {
    return instances == 0 ? 1.0 : static_cast<double>(exact_optimal) / static_cast<double>(instances);
  }
};

// Random G(n, p) graphs with n in [2, max_n], p cycling over {0.2, 0.5, 0.8}
// and budget in [1, min(max_budget, n)]; instance 0 is the path P5 with budget 2.
SimilarityGraph random_graph(std::size_t n, double p, std::uint64_t seed);
VerifyReport run_verify(const VerifyConfig& config);
Json verify_to_json(const VerifyReport& report, bool include_timings);

}  // namespace fastgas
