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

#include "fastgas/embedding.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "fastgas/random.hpp"

namespace fastgas {

namespace {

constexpr char kMagic[4] = {'F', 'G', 'E', 'M'};
constexpr std::uint32_t kBinaryVersion = 1;

void check_row(std::span<const float> row, std::size_t record) {
  bool nonzero = false;
  for (float x : row) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kFormatError, "non-finite value", record);
    if (x != 0.0f) nonzero = true;
  }
  if (!nonzero) throw Error(ErrorCode::kFormatError, "zero vector", record);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open '" + path.string() + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  using U = std::make_unsigned_t<T>;
  U bits = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(bits & 0xffu));
    bits = static_cast<U>(bits >> 8);
  }
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get(std::size_t record) {
    need(sizeof(T), record);
    std::make_unsigned_t<T> bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      bits |= static_cast<std::make_unsigned_t<T>>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(bits);
  }

  std::span<const std::uint8_t> take(std::size_t n, std::size_t record) {
    need(n, record);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n, std::size_t record) const {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::kFormatError, "truncated binary embedding file", record);
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

EmbeddingFormat parse_embedding_format(std::string_view name) {
  if (name == "jsonl") return EmbeddingFormat::kJsonl;
  if (name == "binary") return EmbeddingFormat::kBinary;
  throw Error(ErrorCode::kInvalidParameter, "unknown embedding format '" + std::string(name) + "'");
}

std::string_view to_string(EmbeddingFormat format) {
  return format == EmbeddingFormat::kJsonl ? "jsonl" : "binary";
}

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> ids, std::vector<float> values,
                                 std::size_t dim)
    : ids_(std::move(ids)), values_(std::move(values)), dim_(dim) {
  if (ids_.empty()) throw Error(ErrorCode::kFormatError, "embedding matrix has no rows");
  if (dim_ == 0) throw Error(ErrorCode::kFormatError, "embedding dimension must be >= 1");
  if (values_.size() != ids_.size() * dim_) {
    throw Error(ErrorCode::kFormatError,
                "expected " + std::to_string(ids_.size() * dim_) + " values, got " +
                    std::to_string(values_.size()));
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!seen.insert(ids_[i]).second) {
      throw Error(ErrorCode::kFormatError, "duplicate id '" + ids_[i] + "'", i + 1);
    }
    check_row(row(i), i + 1);
  }
}

EmbeddingMatrix parse_jsonl(std::string_view text) {
  std::vector<std::string> ids;
  std::vector<float> values;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormatError, std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!record.is_object() || !record.contains("id") || !record["id"].is_string() ||
        !record.contains("vector") || !record["vector"].is_array()) {
      throw Error(ErrorCode::kFormatError,
                  "record must be an object with string 'id' and array 'vector'", line_no);
    }
    const auto& vec = record["vector"];
    if (ids.empty()) {
      dim = vec.size();
      if (dim == 0) throw Error(ErrorCode::kFormatError, "empty vector", line_no);
    } else if (vec.size() != dim) {
      throw Error(ErrorCode::kFormatError,
                  "dimension " + std::to_string(vec.size()) + " differs from " +
                      std::to_string(dim),
                  line_no);
    }
    for (const auto& x : vec) {
      if (!x.is_number()) throw Error(ErrorCode::kFormatError, "non-numeric component", line_no);
      const float f = static_cast<float>(x.get<double>());
      if (!std::isfinite(f)) throw Error(ErrorCode::kFormatError, "non-finite value", line_no);
      values.push_back(f);
    }
    ids.push_back(record["id"].get<std::string>());
  }
  return EmbeddingMatrix(std::move(ids), std::move(values), dim);
}

std::string to_jsonl(const EmbeddingMatrix& matrix) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += "{\"id\":";
    out += nlohmann::json(matrix.id(i)).dump();
    out += ",\"vector\":[";
    bool first = true;
    for (float x : matrix.row(i)) {
      if (!first) out += ',';
      first = false;
      // Shortest representation that parses back to the same float.
      auto res = std::to_chars(buf, buf + sizeof(buf), x);
      out.append(buf, res.ptr);
    }
    out += "]}\n";
  }
  return out;
}

std::vector<std::uint8_t> encode_binary(const EmbeddingMatrix& matrix) {
  std::vector<std::uint8_t> out;
  out.reserve(24 + matrix.values().size() * 4 + matrix.size() * 12);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le<std::uint32_t>(out, kBinaryVersion);
  put_le<std::uint64_t>(out, matrix.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(matrix.dim()));
  for (float x : matrix.values()) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(x));
  for (const auto& id : matrix.ids()) {
    if (id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::kInvalidParameter, "id longer than 65535 bytes: " + id.substr(0, 32));
    }
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
    out.insert(out.end(), id.begin(), id.end());
  }
  return out;
}

EmbeddingMatrix decode_binary(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto magic = in.take(4, 0);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kFormatError, "bad magic bytes, expected FGEM");
  }
  const auto version = in.get<std::uint32_t>(0);
  if (version != kBinaryVersion) {
    throw Error(ErrorCode::kFormatError, "unsupported version " + std::to_string(version));
  }
  const auto n = in.get<std::uint64_t>(0);
  const auto dim = in.get<std::uint32_t>(0);
  if (n == 0 || dim == 0) throw Error(ErrorCode::kFormatError, "empty matrix header");
  if (n > bytes.size() / (std::size_t{4} * dim)) {
    throw Error(ErrorCode::kFormatError, "header claims more data than the file holds");
  }
  std::vector<float> values(n * dim);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      values[r * dim + c] = std::bit_cast<float>(in.get<std::uint32_t>(r + 1));
    }
  }
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto len = in.get<std::uint16_t>(r + 1);
    auto raw = in.take(len, r + 1);
    ids.emplace_back(reinterpret_cast<const char*>(raw.data()), raw.size());
  }
  if (!in.done()) throw Error(ErrorCode::kFormatError, "trailing bytes after id table");
  return EmbeddingMatrix(std::move(ids), std::move(values), dim);
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path, EmbeddingFormat format) {
  const auto bytes = read_file(path);
  if (format == EmbeddingFormat::kBinary) return decode_binary(bytes);
  return parse_jsonl(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void save_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path,
                     EmbeddingFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kFileNotFound, "cannot write '" + path.string() + "'");
  if (format == EmbeddingFormat::kBinary) {
    const auto bytes = encode_binary(matrix);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  } else {
    out << to_jsonl(matrix);
  }
  if (!out) throw Error(ErrorCode::kFileNotFound, "write failed for '" + path.string() + "'");
}

SyntheticPool generate_synthetic(std::size_t n, std::size_t d, std::size_t clusters,
                                 double spread, std::uint64_t seed) {
  if (clusters < 1 || n < clusters || d < 1 || !(spread > 0.0) || !std::isfinite(spread)) {
    throw Error(ErrorCode::kInvalidParameter,
                "synthetic pool needs n >= clusters >= 1, d >= 1, spread > 0");
  }
  Rng rng(seed);
  std::vector<double> means(clusters * d, 0.0);
  if (clusters <= d) {
    for (std::size_t c = 0; c < clusters; ++c) means[c * d + c] = 1.0;
  } else {
    for (std::size_t c = 0; c < clusters; ++c) {
      double norm = 0.0;
      do {
        norm = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          means[c * d + j] = rng.normal();
          norm += means[c * d + j] * means[c * d + j];
        }
      } while (norm == 0.0);
      norm = std::sqrt(norm);
      for (std::size_t j = 0; j < d; ++j) means[c * d + j] /= norm;
    }
  }

  std::vector<std::string> ids;
  std::vector<float> values;
  std::vector<std::size_t> labels;
  ids.reserve(n);
  values.reserve(n * d);
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % clusters;
    bool nonzero = false;
    const std::size_t row_start = values.size();
    for (std::size_t j = 0; j < d; ++j) {
      const float x = static_cast<float>(means[c * d + j] + spread * rng.normal());
      nonzero = nonzero || x != 0.0f;
      values.push_back(x);
    }
    if (!nonzero) values[row_start + c % d] = 1.0f;
    ids.push_back("syn-" + std::to_string(i));
    labels.push_back(c);
  }
  return {EmbeddingMatrix(std::move(ids), std::move(values), d), std::move(labels)};
}

}  // namespace fastgas
