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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fastgas/embedding.hpp"
#include "fastgas/partitioner.hpp"
#include "fastgas/pipeline.hpp"
#include "fastgas/retrieval.hpp"
#include "fastgas/selector.hpp"
#include "fastgas/serialize.hpp"
#include "fastgas/similarity_graph.hpp"

namespace py = pybind11;
using namespace fastgas;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

EmbeddingMatrix make_matrix(std::vector<std::string> ids, const FloatArray& values) {
  if (values.ndim() != 2) throw Error(ErrorCode::kInvalidParameter, "values must be a 2-d array");
  const auto n = static_cast<std::size_t>(values.shape(0));
  const auto d = static_cast<std::size_t>(values.shape(1));
  if (ids.empty()) {
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  }
  return EmbeddingMatrix(std::move(ids), std::vector<float>(values.data(), values.data() + n * d), d);
}

py::array_t<float> matrix_values(const EmbeddingMatrix& m) {
  py::array_t<float> out({m.size(), m.dim()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

py::object to_python(const Json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

py::dict selection_dict(const SelectionResult& r) {
  py::dict d;
  d["method"] = r.method;
  d["budget"] = r.budget;
  d["K"] = r.num_parts == 0 ? py::object(py::none()) : py::cast(r.num_parts);
  d["seed"] = r.seed;
  d["selected"] = r.selected;
  d["per_part"] = r.per_part;
  d["timings_ms"] = r.timings;
  return d;
}

std::vector<std::size_t> to_index(const std::vector<VertexId>& v) { return {v.begin(), v.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph-based example selection for in-context learning";

  static py::exception<Error> error(m, "FastgasError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object args = py::make_tuple(e.what(), std::string(to_string(e.code())));
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  py::class_<EmbeddingMatrix>(m, "Embeddings")
      .def(py::init(&make_matrix), py::arg("ids"), py::arg("values"))
      .def_property_readonly("ids", &EmbeddingMatrix::ids)
      .def_property_readonly("values", &matrix_values)
      .def_property_readonly("dim", &EmbeddingMatrix::dim)
      .def("__len__", &EmbeddingMatrix::size)
      .def("__eq__", [](const EmbeddingMatrix& a, const EmbeddingMatrix& b) { return a == b; });

  m.def(
      "load_embeddings",
      [](const std::filesystem::path& path, const std::string& format) {
        return load_embeddings(path, parse_embedding_format(format));
      },
      py::arg("path"), py::arg("format") = "binary");
  m.def(
      "save_embeddings",
      [](const EmbeddingMatrix& e, const std::filesystem::path& path, const std::string& format) {
        save_embeddings(e, path, parse_embedding_format(format));
      },
      py::arg("embeddings"), py::arg("path"), py::arg("format") = "binary");
  m.def(
      "generate_synthetic",
      [](std::size_t n, std::size_t dim, std::size_t clusters, double spread, std::uint64_t seed) {
        auto pool = generate_synthetic(n, dim, clusters, spread, seed);
        return py::make_tuple(std::move(pool.matrix), pool.labels);
      },
      py::arg("n"), py::arg("dim"), py::arg("clusters") = 10, py::arg("spread") = 0.1, py::arg("seed") = 0);
  m.def(
      "cosine_similarity",
      [](const std::vector<double>& u, const std::vector<double>& v) { return cosine_similarity(u, v); },
      py::arg("u"), py::arg("v"));

  py::class_<SimilarityGraph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
            std::vector<WeightedEdge> list;
            for (auto [u, v] : edges) list.push_back({u, v, 1});
            return SimilarityGraph::from_edges(n, list);
          },
          py::arg("num_vertices"), py::arg("edges"))
      .def_property_readonly("num_vertices", &SimilarityGraph::num_vertices)
      .def_property_readonly("num_edges", &SimilarityGraph::num_edges)
      .def("degree", &SimilarityGraph::degree, py::arg("v"))
      .def("edges", [](const SimilarityGraph& g) {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      });

  m.def("build_knn_graph", &build_knn_graph, py::arg("embeddings"), py::arg("k") = 10, py::arg("threads") = 0);

  m.def(
      "partition_kway",
      [](const SimilarityGraph& g, std::size_t k, std::uint64_t seed, double epsilon, std::size_t threads) {
        PartitionOptions options;
        options.epsilon = epsilon;
        options.threads = threads;
        const auto r = partition_kway(g, k, seed, options);
        py::dict d;
        d["assignment"] = r.partition.assignment();
        d["part_sizes"] = r.partition.part_sizes();
        d["cut"] = r.cut;
        d["timings_ms"] = r.timings;
        return d;
      },
      py::arg("graph"), py::arg("K"), py::arg("seed") = 0, py::arg("epsilon") = kDefaultEpsilon,
      py::arg("threads") = 0);

  m.def("greedy_select", &greedy_select, py::arg("graph"), py::arg("n"));
  m.def(
      "coverage_objective",
      [](const SimilarityGraph& g, const std::vector<VertexId>& s) { return coverage_objective(g, s); },
      py::arg("graph"), py::arg("selected"));
  m.def(
      "brute_force_max_coverage",
      [](const SimilarityGraph& g, std::size_t n) {
        const auto opt = brute_force_max_coverage(g, n);
        return py::make_tuple(opt.set, opt.value);
      },
      py::arg("graph"), py::arg("n"));
  m.def(
      "allocate_quotas",
      [](const std::vector<std::size_t>& sizes, std::size_t budget) { return allocate_quotas(sizes, budget); },
      py::arg("part_sizes"), py::arg("budget"));

  m.def(
      "fastgas_select",
      [](const SimilarityGraph& g, std::size_t k, std::size_t budget, std::uint64_t seed, double epsilon,
         std::size_t threads) {
        FastgasOptions options;
        options.epsilon = epsilon;
        options.threads = threads;
        return selection_dict(fastgas_select(g, k, budget, seed, options));
      },
      py::arg("graph"), py::arg("K"), py::arg("budget"), py::arg("seed") = 0, py::arg("epsilon") = kDefaultEpsilon,
      py::arg("threads") = 0);
  m.def(
      "random_select",
      [](std::size_t n, std::size_t budget, std::uint64_t seed) {
        return selection_dict(random_select(n, budget, seed));
      },
      py::arg("pool_size"), py::arg("budget"), py::arg("seed") = 0);
  m.def(
      "top_degree_select",
      [](const SimilarityGraph& g, std::size_t budget) { return selection_dict(top_degree_select(g, budget)); },
      py::arg("graph"), py::arg("budget"));
  m.def(
      "pagerank_select",
      [](const SimilarityGraph& g, std::size_t budget, double damping, double tol, std::size_t max_iters) {
        return selection_dict(pagerank_select(g, budget, {damping, tol, max_iters}));
      },
      py::arg("graph"), py::arg("budget"), py::arg("damping") = 0.85, py::arg("tol") = 1e-10,
      py::arg("max_iters") = 200);
  m.def(
      "subcluster_select",
      [](const EmbeddingMatrix& e, std::size_t k, std::size_t budget, std::uint64_t seed) {
        return selection_dict(subcluster_select(e, k, budget, seed));
      },
      py::arg("embeddings"), py::arg("K"), py::arg("budget"), py::arg("seed") = 0);

  m.def(
      "retrieve_similar",
      [](const EmbeddingMatrix& pool, const std::vector<VertexId>& selected, const EmbeddingMatrix& tests,
         std::size_t m, const std::string& order, std::size_t threads) {
        const auto idx = to_index(selected);
        return retrieve_similar(pool, idx, tests, m, parse_prompt_order(order), threads).per_test;
      },
      py::arg("pool"), py::arg("selected"), py::arg("tests"), py::arg("m") = 4, py::arg("order") = "asc",
      py::arg("threads") = 0);
  m.def(
      "retrieve_random",
      [](const std::vector<VertexId>& selected, std::size_t num_tests, std::size_t m, std::uint64_t seed) {
        const auto idx = to_index(selected);
        return retrieve_random(idx, num_tests, m, seed).per_test;
      },
      py::arg("selected"), py::arg("num_tests"), py::arg("m") = 4, py::arg("seed") = 0);

  m.def(
      "run_verify",
      [](std::size_t instances, std::size_t max_n, std::size_t max_budget, std::uint64_t seed) {
        VerifyConfig config;
        config.instances = instances;
        config.max_n = max_n;
        config.max_budget = max_budget;
        config.seed = seed;
        return to_python(verify_to_json(run_verify(config), false));
      },
      py::arg("instances") = 500, py::arg("max_n") = 12, py::arg("max_budget") = 4, py::arg("seed") = 0);
}
