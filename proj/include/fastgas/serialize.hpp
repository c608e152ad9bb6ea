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

// JSON documents written and read by the command-line tool.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fastgas/partitioner.hpp"
#include "fastgas/retrieval.hpp"
#include "fastgas/selector.hpp"
#include "fastgas/similarity_graph.hpp"

namespace fastgas {

using Json = nlohmann::ordered_json;

// {num_vertices, k, edges: [[u, v, w], ...] with u < v, vertex_weights}
Json graph_to_json(const SimilarityGraph& g, std::size_t k);
SimilarityGraph graph_from_json(const Json& doc);

// {K, seed, assignment, cut, part_sizes, timings_ms: {coarsen, init, refine, total}}
Json partition_to_json(const PartitionResult& result, std::uint64_t seed, bool include_timings);
Partition partition_from_json(const Json& doc);

// {method, budget, K, seed, selected, selected_ids, per_part, timings_ms}
// ids maps vertex index to instance id; empty means use the index itself.
Json selection_to_json(const SelectionResult& result, const std::vector<std::string>& ids,
                       bool include_timings);
SelectionResult selection_from_json(const Json& doc);

// {mode, m, order, per_test: {test_id: [selected ids]}}
Json retrieval_to_json(const RetrievalPlan& plan, const std::vector<std::string>& pool_ids);

Json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& doc);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fastgas
