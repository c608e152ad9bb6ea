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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastgas/error.hpp"

namespace fastgas {

enum class EmbeddingFormat { kJsonl, kBinary };

EmbeddingFormat parse_embedding_format(std::string_view name);
std::string_view to_string(EmbeddingFormat format);

// N instance vectors of dimension d, row-major float32, with unique ids.
// Immutable once constructed; the constructor enforces every invariant
// (N >= 1, d >= 1, unique ids, finite and non-zero rows).
class EmbeddingMatrix {
 public:
  EmbeddingMatrix(std::vector<std::string> ids, std::vector<float> values,
                  std::size_t dim);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const float> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<float>& values() const noexcept { return values_; }

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

 private:
  std::vector<std::string> ids_;
  std::vector<float> values_;
  std::size_t dim_;
};

EmbeddingMatrix load_embeddings(const std::filesystem::path& path,
                                EmbeddingFormat format);
void save_embeddings(const EmbeddingMatrix& matrix,
                     const std::filesystem::path& path, EmbeddingFormat format);

// In-memory codecs backing the file functions.
EmbeddingMatrix parse_jsonl(std::string_view text);
std::string to_jsonl(const EmbeddingMatrix& matrix);
EmbeddingMatrix decode_binary(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_binary(const EmbeddingMatrix& matrix);

struct SyntheticPool {
  EmbeddingMatrix matrix;
  std::vector<std::size_t> labels;  // generating component of each row
};

// Mixture of `clusters` isotropic Gaussians with standard deviation
// `spread` around unit-norm means. When clusters <= d the means are the
// coordinate axes; otherwise they are seeded random unit directions.
// Row i belongs to component i % clusters.
SyntheticPool generate_synthetic(std::size_t n, std::size_t d, std::size_t clusters,
                                 double spread, std::uint64_t seed);

template <typename T, typename U>
double cosine_similarity(std::span<const T> u, std::span<const U> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vectors have dimensions " + std::to_string(u.size()) + " and " +
                    std::to_string(v.size()));
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = static_cast<double>(u[i]);
    const double b = static_cast<double>(v[i]);
    dot += a * b;
    uu += a * a;
    vv += b * b;
  }
  if (uu == 0.0 || vv == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine similarity of a zero vector");
  }
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

inline double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  return cosine_similarity<double, double>(u, v);
}

}  // namespace fastgas
