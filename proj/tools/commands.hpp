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
#include <string>
#include <vector>

#include "fastgas/pipeline.hpp"

namespace fastgas::cli {

// Settings shared by every subcommand. Unset paths are empty.
struct RunConfig {
  std::string input;
  std::string format = "binary";
  std::string graph;
  std::string output;
  std::size_t k = 10;
  std::size_t num_parts = 0;  // K
  std::size_t budget = 0;     // M
  std::uint64_t seed = 0;
  double epsilon = 0.03;
  std::string method = "fastgas";
  std::size_t threads = 0;
  bool no_timings = false;

  // generate
  std::size_t n = 3000;
  std::size_t dim = 768;
  std::size_t clusters = 10;
  double spread = 0.1;

  // pagerank / subcluster
  double damping = 0.85;
  double tolerance = 1e-10;
  std::size_t max_iters = 0;  // 0 = per-method default

  // retrieve
  std::string selection;
  std::string tests;
  std::string tests_format;
  std::string mode = "similar";
  std::string order = "asc";
  std::size_t m = 4;
  std::size_t num_tests = 0;

  // bench
  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000};
  std::size_t repeats = 5;
  std::string csv;

  // verify
  std::size_t max_n = 12;
  std::size_t max_budget = 4;
  std::size_t instances = 500;
};

int cmd_generate(const RunConfig& config);
int cmd_build_graph(const RunConfig& config);
int cmd_partition(const RunConfig& config);
int cmd_select(const RunConfig& config);
int cmd_retrieve(const RunConfig& config);
int cmd_bench(const RunConfig& config);
int cmd_verify(const RunConfig& config);

}  // namespace fastgas::cli
