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

#include "fastgas/serialize.hpp"

#include <fstream>
#include <sstream>

namespace fastgas {

namespace {

Json timings_json(const StageTimings& timings) {
  Json out = Json::object();
  for (const auto& [name, ms] : timings) out[name] = ms;
  return out;
}

template <typename Fn>
auto as_format_error(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json graph_to_json(const SimilarityGraph& g, std::size_t k) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.u, e.v, e.weight}));
  Json doc;
  doc["num_vertices"] = g.num_vertices();
  doc["k"] = k;
  doc["edges"] = std::move(edges);
  doc["vertex_weights"] = g.vertex_weights();
  return doc;
}

SimilarityGraph graph_from_json(const Json& doc) {
  return as_format_error("graph document", [&] {
    const auto n = doc.at("num_vertices").get<std::size_t>();
    std::vector<WeightedEdge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw Error(ErrorCode::kFormatError, "edge entries must be [u, v, w]");
      }
      edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>(), e[2].get<Weight>()});
    }
    std::vector<Weight> weights;
    if (doc.contains("vertex_weights")) weights = doc["vertex_weights"].get<std::vector<Weight>>();
    try {
      return SimilarityGraph::from_edges(n, edges, std::move(weights));
    } catch (const Error& e) {
      throw Error(ErrorCode::kFormatError, e.what());
    }
  });
}

Json partition_to_json(const PartitionResult& result, std::uint64_t seed, bool include_timings) {
  Json doc;
  doc["K"] = result.partition.num_parts();
  doc["seed"] = seed;
  doc["assignment"] = result.partition.assignment();
  doc["cut"] = result.cut;
  doc["part_sizes"] = result.partition.part_sizes();
  if (include_timings) doc["timings_ms"] = timings_json(result.timings);
  return doc;
}

Partition partition_from_json(const Json& doc) {
  return as_format_error("partition document", [&] {
    try {
      return Partition(doc.at("assignment").get<std::vector<PartId>>(), doc.at("K").get<std::size_t>());
    } catch (const Error& e) {
      throw Error(ErrorCode::kFormatError, e.what());
    }
  });
}

Json selection_to_json(const SelectionResult& result, const std::vector<std::string>& ids,
                       bool include_timings) {
  auto id_of = [&](VertexId v) { return ids.empty() ? std::to_string(v) : ids.at(v); };
  Json doc;
  doc["method"] = result.method;
  doc["budget"] = result.budget;
  if (result.num_parts == 0) {
    doc["K"] = nullptr;
  } else {
    doc["K"] = result.num_parts;
  }
  doc["seed"] = result.seed;
  doc["selected"] = result.selected;
  Json selected_ids = Json::array();
  for (VertexId v : result.selected) selected_ids.push_back(id_of(v));
  doc["selected_ids"] = std::move(selected_ids);
  doc["per_part"] = result.per_part;
  if (include_timings) doc["timings_ms"] = timings_json(result.timings);
  return doc;
}

SelectionResult selection_from_json(const Json& doc) {
  return as_format_error("selection document", [&] {
    SelectionResult r;
    r.method = doc.at("method").get<std::string>();
    r.budget = doc.at("budget").get<std::size_t>();
    r.num_parts = doc.contains("K") && !doc["K"].is_null() ? doc["K"].get<std::size_t>() : 0;
    r.seed = doc.value("seed", std::uint64_t{0});
    r.selected = doc.at("selected").get<std::vector<VertexId>>();
    if (doc.contains("per_part")) {
      r.per_part = doc["per_part"].get<std::vector<std::vector<VertexId>>>();
    }
    return r;
  });
}

Json retrieval_to_json(const RetrievalPlan& plan, const std::vector<std::string>& pool_ids) {
  Json per_test = Json::object();
  for (std::size_t t = 0; t < plan.per_test.size(); ++t) {
    Json list = Json::array();
    for (std::size_t idx : plan.per_test[t]) list.push_back(pool_ids.at(idx));
    per_test[plan.test_ids.at(t)] = std::move(list);
  }
  Json doc;
  doc["mode"] = std::string(to_string(plan.mode));
  doc["m"] = plan.m;
  doc["order"] = std::string(to_string(plan.order));
  doc["per_test"] = std::move(per_test);
  return doc;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, "'" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kFileNotFound, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kFileNotFound, "write failed for '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace fastgas
