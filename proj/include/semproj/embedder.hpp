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

#include <string>
#include <unordered_map>
#include <vector>

#include "semproj/error.hpp"
#include "semproj/types.hpp"

namespace semproj {

/// Anything that turns texts into vectors of one model. Output order matches
/// input order.
class TextEmbedder {
 public:
  virtual ~TextEmbedder() = default;
  virtual const std::string& model_id() const = 0;
  virtual std::vector<Embedding> embed_texts(const std::vector<std::string>& texts) = 0;
};

/// Fixed table of vectors; a lookup miss is a MissingEmbedding error.
class TableEmbedder : public TextEmbedder {
 public:
  TableEmbedder(std::string model_id, std::unordered_map<std::string, Embedding> table)
      : model_id_(std::move(model_id)), table_(std::move(table)) {}

  const std::string& model_id() const override { return model_id_; }

  std::vector<Embedding> embed_texts(const std::vector<std::string>& texts) override {
    std::vector<Embedding> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
      auto it = table_.find(t);
      if (it == table_.end()) throw Error(ErrorCode::kMissingEmbedding, "'" + t + "'");
      out.push_back(it->second);
    }
    return out;
  }

 private:
  std::string model_id_;
  std::unordered_map<std::string, Embedding> table_;
};

/// Embeds each distinct text once and returns a text -> vector map.
inline std::unordered_map<std::string, Embedding> embed_unique(TextEmbedder& embedder,
                                                               const std::vector<std::string>& texts) {
  std::vector<std::string> unique;
  std::unordered_map<std::string, Embedding> out;
  for (const auto& t : texts) {
    if (out.emplace(t, Embedding{}).second) unique.push_back(t);
  }
  auto vectors = embedder.embed_texts(unique);
  for (std::size_t i = 0; i < unique.size(); ++i) out[unique[i]] = std::move(vectors[i]);
  return out;
}

}  // namespace semproj
