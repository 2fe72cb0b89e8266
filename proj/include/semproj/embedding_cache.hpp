// Copyright 2026 The semproj Authors.
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

// Content-addressed store of embedding vectors.
//
// Key: SHA-256(text bytes || 0x00 || model_id bytes), hex encoded, plus the
// model id. On disk a directory holds
//   vectors.bin     contiguous little-endian float32 components
//   manifest.jsonl  {"h": hex64, "model": str, "dim": int, "off": int, "len": int}
// where off and len are byte offsets into vectors.bin. Both files are
// append-only; one model id maps to exactly one dimension.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "semproj/error.hpp"
#include "semproj/sha256.hpp"
#include "semproj/types.hpp"

namespace semproj {

inline std::string embedding_key(std::string_view text, std::string_view model_id) {
  Sha256 h;
  h.update(text);
  h.update(std::string_view("\0", 1));
  h.update(model_id);
  return to_hex(h.finish());
}

namespace detail {
inline void append_f32_le(std::string& out, float f) {
  std::uint32_t u = std::bit_cast<std::uint32_t>(f);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xFF));
}

inline float read_f32_le(const unsigned char* p) {
  std::uint32_t u = 0;
  for (int i = 0; i < 4; ++i) u |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return std::bit_cast<float>(u);
}
}  // namespace detail

class EmbeddingCache {
 public:
  /// In-memory cache; nothing is persisted.
  EmbeddingCache() = default;

  /// Opens (creating if needed) an on-disk cache directory.
  explicit EmbeddingCache(const std::filesystem::path& dir) : dir_(dir) {
    std::filesystem::create_directories(dir);
    load();
    vectors_out_.open(dir / "vectors.bin", std::ios::binary | std::ios::app);
    manifest_out_.open(dir / "manifest.jsonl", std::ios::binary | std::ios::app);
    if (!vectors_out_ || !manifest_out_) {
      throw Error(ErrorCode::kIo, "cannot open embedding cache at '" + dir.string() + "' for writing");
    }
  }

  EmbeddingCache(const EmbeddingCache&) = delete;
  EmbeddingCache& operator=(const EmbeddingCache&) = delete;

  bool persistent() const { return dir_.has_value(); }

  std::optional<Embedding> get(std::string_view text, std::string_view model_id) const {
    return get_by_hash(embedding_key(text, model_id), model_id);
  }

  std::optional<Embedding> get_by_hash(const std::string& hash, std::string_view model_id) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(compound_key(hash, model_id));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view text, std::string_view model_id) const {
    std::shared_lock lock(mutex_);
    return entries_.count(compound_key(embedding_key(text, model_id), model_id)) > 0;
  }

  std::optional<std::size_t> dim_for(const std::string& model_id) const {
    std::shared_lock lock(mutex_);
    auto it = dims_.find(model_id);
    if (it == dims_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

  /// Stores a vector. Re-putting an identical vector is a no-op; a different
  /// vector under an existing key is rejected.
  void put(std::string_view text, const std::string& model_id, const Embedding& v) {
    put_by_hash(embedding_key(text, model_id), model_id, v);
  }

  void put_by_hash(const std::string& hash, const std::string& model_id, const Embedding& v) {
    if (v.empty()) throw Error(ErrorCode::kInvalidInput, "empty embedding vector");
    for (float x : v) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidInput, "non-finite embedding component for " + hash);
    }
    std::unique_lock lock(mutex_);
    auto dim = dims_.find(model_id);
    if (dim != dims_.end() && dim->second != v.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "model '" + model_id + "' has dimension " +
                                                     std::to_string(dim->second) + ", got " +
                                                     std::to_string(v.size()));
    }
    const std::string key = compound_key(hash, model_id);
    auto existing = entries_.find(key);
    if (existing != entries_.end()) {
      if (std::memcmp(existing->second.data(), v.data(), v.size() * sizeof(float)) != 0) {
        throw Error(ErrorCode::kDuplicateKey, "conflicting vector for " + hash);
      }
      return;
    }
    if (dir_) append(hash, model_id, v);
    dims_[model_id] = v.size();
    entries_.emplace(key, v);
  }

  void flush() {
    std::unique_lock lock(mutex_);
    if (!dir_) return;
    vectors_out_.flush();
    manifest_out_.flush();
    if (!vectors_out_ || !manifest_out_) throw Error(ErrorCode::kIo, "embedding cache flush failed");
  }

  ~EmbeddingCache() {
    if (dir_) {
      vectors_out_.flush();
      manifest_out_.flush();
    }
  }

 private:
  static std::string compound_key(std::string_view hash, std::string_view model_id) {
    std::string k(hash);
    k.push_back('\n');
    k.append(model_id);
    return k;
  }

  void append(const std::string& hash, const std::string& model_id, const Embedding& v) {
    std::string bytes;
    bytes.reserve(v.size() * 4);
    for (float f : v) detail::append_f32_le(bytes, f);
    nlohmann::ordered_json line;
    line["h"] = hash;
    line["model"] = model_id;
    line["dim"] = v.size();
    line["off"] = bin_size_;
    line["len"] = bytes.size();
    vectors_out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    manifest_out_ << line.dump() << '\n';
    if (!vectors_out_ || !manifest_out_) throw Error(ErrorCode::kIo, "embedding cache write failed");
    bin_size_ += bytes.size();
  }

  void load() {
    const auto bin_path = *dir_ / "vectors.bin";
    const auto manifest_path = *dir_ / "manifest.jsonl";
    std::string bin;
    if (std::filesystem::exists(bin_path)) {
      std::ifstream in(bin_path, std::ios::binary);
      bin.assign(std::istreambuf_iterator<char>(in), {});
    }
    bin_size_ = bin.size();
    if (!std::filesystem::exists(manifest_path)) return;
    std::ifstream in(manifest_path, std::ios::binary);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const std::string where = manifest_path.string() + ":" + std::to_string(line_no);
      nlohmann::json j;
      std::string hash, model;
      std::size_t dim = 0, off = 0, len = 0;
      try {
        j = nlohmann::json::parse(line);
        hash = j.at("h").get<std::string>();
        model = j.at("model").get<std::string>();
        dim = j.at("dim").get<std::size_t>();
        off = j.at("off").get<std::size_t>();
        len = j.at("len").get<std::size_t>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kParseError, where + ": " + e.what());
      }
      if (hash.size() != 64 || dim == 0 || len != dim * 4 || off + len > bin.size()) {
        throw Error(ErrorCode::kParseError, where + ": inconsistent record");
      }
      Embedding v(dim);
      const auto* p = reinterpret_cast<const unsigned char*>(bin.data() + off);
      for (std::size_t i = 0; i < dim; ++i) v[i] = detail::read_f32_le(p + 4 * i);
      auto d = dims_.find(model);
      if (d != dims_.end() && d->second != dim) {
        throw Error(ErrorCode::kDimensionMismatch, where + ": model '" + model + "' stored with two dimensions");
      }
      dims_[model] = dim;
      entries_.emplace(compound_key(hash, model), std::move(v));
    }
  }

  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Embedding> entries_;
  std::unordered_map<std::string, std::size_t> dims_;
  std::ofstream vectors_out_;
  std::ofstream manifest_out_;
  std::size_t bin_size_ = 0;
};

}  // namespace semproj
