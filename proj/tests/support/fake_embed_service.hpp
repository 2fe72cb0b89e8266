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

// In-process stand-in for the embedding service. Vectors are a pure
// function of the text, and every request is counted.

#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace testing_support {

class FakeEmbedService {
 public:
  FakeEmbedService(std::string model, std::size_t dim) : model_(std::move(model)), dim_(dim) {
    server_.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      health_calls_++;
      res.set_content(nlohmann::json{{"status", "ok"}, {"model", model_}, {"dim", dim_}, {"version", "fake-1"}}.dump(),
                      "application/json");
    });
    server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      embed_calls_++;
      if (fail_next_ > 0) {
        fail_next_--;
        res.status = 503;
        return;
      }
      const auto body = nlohmann::json::parse(req.body);
      if (body.at("model") != model_) {
        res.status = 409;
        res.set_content("model mismatch", "text/plain");
        return;
      }
      const auto texts = body.at("texts").get<std::vector<std::string>>();
      {
        std::lock_guard lock(mutex_);
        batch_sizes_.push_back(texts.size());
        for (const auto& t : texts) received_.push_back(t);
      }
      nlohmann::json vectors = nlohmann::json::array();
      for (const auto& t : texts) vectors.push_back(vector_for(t));
      res.set_content(nlohmann::json{{"model", model_}, {"dim", dim_}, {"vectors", vectors}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeEmbedService() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::vector<float> vector_for(const std::string& text) const {
    std::vector<float> v(dim_);
    const std::size_t h = std::hash<std::string>{}(text);
    for (std::size_t i = 0; i < dim_; ++i) v[i] = static_cast<float>(((h >> (i * 7)) & 0xFF) / 37.0 - 3.0 + i * 0.125);
    return v;
  }

  void fail_next(int n) { fail_next_ = n; }
  int embed_calls() const { return embed_calls_; }
  int health_calls() const { return health_calls_; }
  std::size_t texts_received() const {
    std::lock_guard lock(mutex_);
    return received_.size();
  }
  std::vector<std::size_t> batch_sizes() const {
    std::lock_guard lock(mutex_);
    return batch_sizes_;
  }

 private:
  std::string model_;
  std::size_t dim_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> embed_calls_{0};
  std::atomic<int> health_calls_{0};
  std::atomic<int> fail_next_{0};
  mutable std::mutex mutex_;
  std::vector<std::string> received_;
  std::vector<std::size_t> batch_sizes_;
};

}  // namespace testing_support
