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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "semproj/embed_client.hpp"
#include "semproj/embedder.hpp"
#include "semproj/embedding_cache.hpp"
#include "semproj/error.hpp"

namespace semproj {

inline constexpr const char* kServiceUrlEnv = "SEMPROJ_EMBED_URL";

struct ProviderHandshake {
  std::string model_id;
  std::size_t dim = 0;
  std::string service_version;
};

struct ProviderOptions {
  std::string model_id;
  bool cache_only = false;
  std::optional<std::string> service_url;  // falls back to SEMPROJ_EMBED_URL
  std::size_t batch_size = 64;
  std::size_t max_in_flight = 4;
  ClientOptions client;
};

struct ProviderStats {
  std::size_t texts_sent = 0;
  std::size_t requests = 0;
  std::size_t cache_hits = 0;
};

/// Cache-first embedder pinned to one model. Misses are de-duplicated,
/// fetched in batches with bounded concurrency and written to the cache
/// before any result is returned.
class EmbeddingProvider : public TextEmbedder {
 public:
  EmbeddingProvider(EmbeddingCache& cache, ProviderOptions options)
      : cache_(cache), options_(std::move(options)) {
    if (options_.model_id.empty()) throw Error(ErrorCode::kInvalidConfig, "model_id is required");
    if (options_.batch_size == 0 || options_.max_in_flight == 0) {
      throw Error(ErrorCode::kInvalidConfig, "batch size and concurrency limit must be positive");
    }
    if (!options_.service_url) {
      if (const char* env = std::getenv(kServiceUrlEnv); env && *env) options_.service_url = env;
    }
    if (!options_.cache_only && options_.service_url) {
      client_.emplace(*options_.service_url, options_.client);
    }
  }

  const std::string& model_id() const override { return options_.model_id; }

  bool has_service() const { return client_.has_value(); }

  ProviderHandshake handshake() {
    std::lock_guard lock(handshake_mutex_);
    if (handshake_) return *handshake_;
    if (!client_) throw Error(ErrorCode::kServiceUnreachable, "no embedding service configured");
    const ServiceHealth h = client_->health();
    if (h.model_id != options_.model_id) {
      throw Error(ErrorCode::kModelMismatch,
                  "service hosts '" + h.model_id + "', run is pinned to '" + options_.model_id + "'");
    }
    if (h.dim == 0) throw Error(ErrorCode::kServiceError, "service reported dimension 0");
    if (auto cached = cache_.dim_for(options_.model_id); cached && *cached != h.dim) {
      throw Error(ErrorCode::kDimensionMismatch, "service dimension " + std::to_string(h.dim) +
                                                     " differs from cached " + std::to_string(*cached));
    }
    handshake_ = ProviderHandshake{h.model_id, h.dim, h.version};
    return *handshake_;
  }

  std::vector<Embedding> embed_texts(const std::vector<std::string>& texts) override {
    std::vector<std::string> hashes;
    hashes.reserve(texts.size());
    std::vector<std::size_t> misses;  // first occurrence of each missing hash
    {
      std::unordered_map<std::string, bool> seen;
      for (std::size_t i = 0; i < texts.size(); ++i) {
        hashes.push_back(embedding_key(texts[i], options_.model_id));
        if (seen.count(hashes.back())) continue;
        const bool hit = cache_.get_by_hash(hashes.back(), options_.model_id).has_value();
        seen.emplace(hashes.back(), hit);
        if (!hit) misses.push_back(i);
      }
    }
    if (!misses.empty()) fetch(texts, hashes, misses);

    std::vector<Embedding> out;
    out.reserve(texts.size());
    for (const auto& h : hashes) {
      auto v = cache_.get_by_hash(h, options_.model_id);
      if (!v) throw Error(ErrorCode::kCacheMiss, "text hash " + h);
      out.push_back(std::move(*v));
    }
    std::lock_guard lock(stats_mutex_);
    stats_.cache_hits += texts.size() - misses.size();
    return out;
  }

  ProviderStats stats() const {
    std::lock_guard lock(stats_mutex_);
    return stats_;
  }

 private:
  void fetch(const std::vector<std::string>& texts, const std::vector<std::string>& hashes,
             const std::vector<std::size_t>& misses) {
    if (!client_) {
      throw Error(ErrorCode::kCacheMiss, "text hash " + hashes[misses.front()] + " not cached (" +
                                             std::to_string(misses.size()) + " missing" +
                                             (options_.cache_only ? ", cache-only mode)" : ", no service)"));
    }
    const std::size_t dim = handshake().dim;

    std::vector<std::vector<std::size_t>> batches;
    for (std::size_t b = 0; b < misses.size(); b += options_.batch_size) {
      const auto end = std::min(misses.size(), b + options_.batch_size);
      batches.emplace_back(misses.begin() + static_cast<std::ptrdiff_t>(b),
                           misses.begin() + static_cast<std::ptrdiff_t>(end));
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
      for (std::size_t b; (b = next.fetch_add(1)) < batches.size();) {
        {
          std::lock_guard lock(error_mutex);
          if (first_error) return;
        }
        try {
          std::vector<std::string> batch_texts;
          for (std::size_t i : batches[b]) batch_texts.push_back(texts[i]);
          {
            std::lock_guard lock(stats_mutex_);
            stats_.requests += 1;
            stats_.texts_sent += batch_texts.size();
          }
          const auto vectors = client_->embed(options_.model_id, batch_texts);
          for (std::size_t k = 0; k < vectors.size(); ++k) {
            if (vectors[k].size() != dim) {
              throw Error(ErrorCode::kDimensionMismatch, "service vector of length " +
                                                             std::to_string(vectors[k].size()) + ", handshake " +
                                                             std::to_string(dim));
            }
            cache_.put_by_hash(hashes[batches[b][k]], options_.model_id, vectors[k]);
          }
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    const std::size_t n_workers = std::min(options_.max_in_flight, batches.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    cache_.flush();
    if (first_error) std::rethrow_exception(first_error);
  }

  EmbeddingCache& cache_;
  ProviderOptions options_;
  std::optional<EmbedServiceClient> client_;
  std::mutex handshake_mutex_;
  std::optional<ProviderHandshake> handshake_;
  mutable std::mutex stats_mutex_;
  ProviderStats stats_;
};

}  // namespace semproj
