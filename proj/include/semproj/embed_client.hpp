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

// HTTP client for the embedding inference service.
//
//   GET  /health -> {"status": str, "model": str, "dim": int[, "version": str]}
//   POST /embed  {"model": str, "texts": [str]} -> {"model": str, "dim": int, "vectors": [[float]]}
//
// Connection failures and 5xx responses are retried with exponential
// backoff; 409 means the service hosts a different model.

#pragma once

#include <chrono>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "semproj/error.hpp"
#include "semproj/types.hpp"

namespace semproj {

struct ClientOptions {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::seconds connect_timeout{5};
  std::chrono::seconds request_timeout{60};
};

struct ServiceHealth {
  std::string status;
  std::string model_id;
  std::size_t dim = 0;
  std::string version;
};

class EmbedServiceClient {
 public:
  /// `base_url` is scheme://host[:port][/prefix].
  explicit EmbedServiceClient(std::string base_url, ClientOptions options = {})
      : options_(options) {
    const auto scheme = base_url.find("://");
    if (scheme == std::string::npos) throw Error(ErrorCode::kInvalidConfig, "service URL needs a scheme: " + base_url);
    const auto path = base_url.find('/', scheme + 3);
    origin_ = base_url.substr(0, path);
    if (path != std::string::npos) prefix_ = base_url.substr(path);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }

  ServiceHealth health() const {
    const nlohmann::json j = request("GET", "/health", "");
    try {
      ServiceHealth h;
      h.status = j.at("status").get<std::string>();
      h.model_id = j.at("model").get<std::string>();
      h.dim = j.at("dim").get<std::size_t>();
      h.version = j.value("version", "");
      return h;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kServiceError, std::string("malformed /health response: ") + e.what());
    }
  }

  /// One /embed round trip; output order matches `texts`.
  std::vector<Embedding> embed(const std::string& model_id, const std::vector<std::string>& texts) const {
    const nlohmann::json body = {{"model", model_id}, {"texts", texts}};
    const nlohmann::json j = request("POST", "/embed", body.dump());
    try {
      if (j.at("model").get<std::string>() != model_id) {
        throw Error(ErrorCode::kModelMismatch, "service answered with model '" + j.at("model").get<std::string>() + "'");
      }
      const auto dim = j.at("dim").get<std::size_t>();
      const auto& vectors = j.at("vectors");
      if (vectors.size() != texts.size()) {
        throw Error(ErrorCode::kServiceError, "service returned " + std::to_string(vectors.size()) +
                                                  " vectors for " + std::to_string(texts.size()) + " texts");
      }
      std::vector<Embedding> out;
      out.reserve(texts.size());
      for (const auto& v : vectors) {
        if (v.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "vector length differs from reported dim");
        Embedding e;
        e.reserve(dim);
        for (const auto& x : v) e.push_back(x.get<float>());
        out.push_back(std::move(e));
      }
      return out;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kServiceError, std::string("malformed /embed response: ") + e.what());
    }
  }

 private:
  nlohmann::json request(const std::string& method, const std::string& path, const std::string& body) const {
    auto backoff = options_.initial_backoff;
    std::string last_error;
    bool reachable = false;
    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
      if (attempt > 1) {
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
      }
      httplib::Client cli(origin_);
      cli.set_connection_timeout(options_.connect_timeout);
      cli.set_read_timeout(options_.request_timeout);
      cli.set_write_timeout(options_.request_timeout);
      auto res = method == "GET" ? cli.Get(prefix_ + path) : cli.Post(prefix_ + path, body, "application/json");
      if (!res) {
        last_error = httplib::to_string(res.error());
        continue;
      }
      reachable = true;
      if (res->status >= 500) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status == 409) throw Error(ErrorCode::kModelMismatch, method + " " + path + ": " + res->body);
      if (res->status != 200) {
        throw Error(ErrorCode::kServiceError, method + " " + path + ": HTTP " + std::to_string(res->status));
      }
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kServiceError, method + " " + path + ": " + e.what());
      }
    }
    throw Error(reachable ? ErrorCode::kServiceError : ErrorCode::kServiceUnreachable,
                origin_ + prefix_ + path + " after " + std::to_string(options_.max_attempts) +
                    " attempts: " + last_error);
  }

  ClientOptions options_;
  std::string origin_;
  std::string prefix_;
};

}  // namespace semproj
