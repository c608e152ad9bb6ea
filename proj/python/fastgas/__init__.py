# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Graph-based example selection for in-context learning."""

from fastgas._core import (
    Embeddings,
    FastgasError,
    Graph,
    allocate_quotas,
    brute_force_max_coverage,
    build_knn_graph,
    cosine_similarity,
    coverage_objective,
    fastgas_select,
    generate_synthetic,
    greedy_select,
    load_embeddings,
    pagerank_select,
    partition_kway,
    random_select,
    retrieve_random,
    retrieve_similar,
    run_verify,
    save_embeddings,
    subcluster_select,
    top_degree_select,
)

__all__ = [
    "Embeddings",
    "FastgasError",
    "Graph",
    "allocate_quotas",
    "brute_force_max_coverage",
    "build_knn_graph",
    "cosine_similarity",
    "coverage_objective",
    "fastgas_select",
    "generate_synthetic",
    "greedy_select",
    "load_embeddings",
    "pagerank_select",
    "partition_kway",
    "random_select",
    "retrieve_random",
    "retrieve_similar",
    "run_verify",
    "save_embeddings",
    "subcluster_select",
    "top_degree_select",
]
