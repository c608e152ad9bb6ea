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

#include "fastgas/retrieval.hpp"

#include <algorithm>
#include <numeric>

#include "fastgas/parallel.hpp"
#include "fastgas/random.hpp"

namespace fastgas {

namespace {

void check_selection(std::span<const std::size_t> selected, std::size_t m) {
  if (selected.empty()) throw Error(ErrorCode::kEmptySelection, "no selected instances to retrieve from");
  if (m < 1) throw Error(ErrorCode::kInvalidParameter, "examples per prompt must be >= 1");
  std::vector<std::size_t> sorted(selected.begin(), selected.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidParameter, "selected indices contain duplicates");
  }
}

}  // namespace

RetrievalMode parse_retrieval_mode(std::string_view name) {
  if (name == "similar") return RetrievalMode::kSimilar;
  if (name == "random") return RetrievalMode::kRandom;
  throw Error(ErrorCode::kInvalidParameter, "unknown retrieval mode '" + std::string(name) + "'");
}

PromptOrder parse_prompt_order(std::string_view name) {
  if (name == "asc") return PromptOrder::kAscending;
  if (name == "desc") return PromptOrder::kDescending;
  throw Error(ErrorCode::kInvalidParameter, "unknown prompt order '" + std::string(name) + "'");
}

std::string_view to_string(RetrievalMode mode) {
  return mode == RetrievalMode::kSimilar ? "similar" : "random";
}

std::string_view to_string(PromptOrder order) {
  return order == PromptOrder::kAscending ? "asc" : "desc";
}

RetrievalPlan retrieve_similar(const EmbeddingMatrix& pool, std::span<const std::size_t> selected,
                               const EmbeddingMatrix& tests, std::size_t m, PromptOrder order,
                               std::size_t threads) {
  check_selection(selected, m);
  if (pool.dim() != tests.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pool dimension " + std::to_string(pool.dim()) + " differs from test dimension " +
                    std::to_string(tests.dim()));
  }
  for (std::size_t s : selected) {
    if (s >= pool.size()) {
      throw Error(ErrorCode::kIndexOutOfRange, "selected index " + std::to_string(s) + " out of range");
    }
  }
  const std::size_t take = std::min(m, selected.size());
  RetrievalPlan plan;
  plan.mode = RetrievalMode::kSimilar;
  plan.order = order;
  plan.m = m;
  plan.test_ids = tests.ids();
  plan.per_test.resize(tests.size());

  parallel_for(tests.size(), threads, [&](std::size_t t) {
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(selected.size());
    for (std::size_t s : selected) {
      scored.emplace_back(cosine_similarity(pool.row(s), tests.row(t)), s);
    }
    auto better = [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                      scored.end(), better);
    auto& out = plan.per_test[t];
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(scored[i].second);
    if (order == PromptOrder::kAscending) std::reverse(out.begin(), out.end());
  });
  return plan;
}

RetrievalPlan retrieve_random(std::span<const std::size_t> selected, std::size_t num_tests,
                              std::size_t m, std::uint64_t seed) {
  check_selection(selected, m);
  const std::size_t take = std::min(m, selected.size());
  RetrievalPlan plan;
  plan.mode = RetrievalMode::kRandom;
  plan.m = m;
  plan.per_test.resize(num_tests);
  plan.test_ids.reserve(num_tests);
  for (std::size_t t = 0; t < num_tests; ++t) {
    plan.test_ids.push_back(std::to_string(t));
    Rng rng(derive_seed(seed, {t}));
    std::vector<std::size_t> pool(selected.begin(), selected.end());
    for (std::size_t i = 0; i < take; ++i) {
      std::swap(pool[i], pool[i + rng.uniform_index(pool.size() - i)]);
    }
    pool.resize(take);
    plan.per_test[t] = std::move(pool);
  }
  return plan;
}

}  // namespace fastgas
