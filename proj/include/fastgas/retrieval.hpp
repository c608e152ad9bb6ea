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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastgas/embedding.hpp"

namespace fastgas {

enum class RetrievalMode { kSimilar, kRandom };
// kAscending puts the most similar example last, next to the test input.
enum class PromptOrder { kAscending, kDescending };

RetrievalMode parse_retrieval_mode(std::string_view name);
PromptOrder parse_prompt_order(std::string_view name);
std::string_view to_string(RetrievalMode mode);
std::string_view to_string(PromptOrder order);

struct RetrievalPlan {
  RetrievalMode mode = RetrievalMode::kSimilar;
  PromptOrder order = PromptOrder::kAscending;
  std::size_t m = 0;
  std::vector<std::string> test_ids;
  // Per test, pool row indices in prompt order (first = leftmost).
  std::vector<std::vector<std::size_t>> per_test;
};

// Ranks `selected` pool rows by cosine similarity to each test row
// (lowest pool index on ties) and keeps the top min(m, |selected|).
RetrievalPlan retrieve_similar(const EmbeddingMatrix& pool, std::span<const std::size_t> selected,
                               const EmbeddingMatrix& tests, std::size_t m,
                               PromptOrder order = PromptOrder::kAscending,
                               std::size_t threads = 0);

// Uniform sample without replacement per test; the stream for test t is
// derived from (seed, t). Test ids are "0".."num_tests-1".
RetrievalPlan retrieve_random(std::span<const std::size_t> selected, std::size_t num_tests,
                              std::size_t m, std::uint64_t seed);

}  // namespace fastgas
