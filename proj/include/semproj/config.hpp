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

// Run configuration: one JSON file, relative paths resolved against the
// file's own directory. Command-line flags override fields after loading.
//
//   {
//     "model_id": "synthetic-v1",
//     "paths": {"responses": "...", "clinical": "...", "anchors": "...",
//               "cache": "...", "sentiment_lexicon": "..."},
//     "reliabilities": {"PHQ9": 0.89, "CESD": 0.9, "GAD7": 0.91, "PSWQ": 0.93},
//     "time_point": "pooled",
//     "seed": 7,
//     "embedding": {"batch_size": 64, "max_in_flight": 4, "cache_only": false},
//     "segmentation": {"abbreviations": ["e.g.", "..."]}
//   }

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semproj/datastore.hpp"
#include "semproj/error.hpp"
#include "semproj/segmentation.hpp"
#include "semproj/types.hpp"

namespace semproj {

struct RunConfig {
  std::filesystem::path base_dir;  // directory of the config file; not serialized

  std::string model_id;
  std::string responses_path;
  std::string clinical_path;
  std::string anchors_path;
  std::string cache_path;
  std::string sentiment_lexicon_path;  // empty: the bundled lexicon
  std::map<Scale, double> reliabilities;
  TimePointFilter time_point = TimePointFilter::kPooled;
  std::optional<Construct> construct;  // empty: both constructs
  std::optional<std::uint64_t> seed;
  std::size_t batch_size = 64;
  std::size_t max_in_flight = 4;
  bool cache_only = false;
  bool lenient = false;
  std::vector<std::string> abbreviations = default_abbreviations();

  std::filesystem::path resolve(const std::string& p) const {
    if (p.empty()) return {};
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  }

  /// Scales whose reliability is required for the selected constructs but
  /// absent, in report order.
  std::vector<Scale> missing_reliabilities() const {
    std::vector<Scale> out;
    for (Construct c : kAllConstructs) {
      if (construct && *construct != c) continue;
      for (Scale s : scales_for(c)) {
        if (!reliabilities.count(s)) out.push_back(s);
      }
    }
    return out;
  }

  void require_reliabilities() const {
    const auto missing = missing_reliabilities();
    if (missing.empty()) return;
    std::string names;
    for (Scale s : missing) names += (names.empty() ? "" : ", ") + std::string(to_string(s));
    throw Error(ErrorCode::kInvalidConfig, "missing scale reliabilities: " + names);
  }

  bool includes(Construct c) const { return !construct || *construct == c; }

  /// Paths are written as given, so the document is independent of where the
  /// run happens.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["model_id"] = model_id;
    j["paths"] = {{"responses", responses_path},
                  {"clinical", clinical_path},
                  {"anchors", anchors_path},
                  {"cache", cache_path},
                  {"sentiment_lexicon", sentiment_lexicon_path}};
    nlohmann::ordered_json rel = nlohmann::ordered_json::object();
    for (const auto& [scale, value] : reliabilities) rel[std::string(to_string(scale))] = value;
    j["reliabilities"] = rel;
    j["time_point"] = to_string(time_point);
    if (construct) j["construct"] = to_string(*construct);
    j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
    j["embedding"] = {{"batch_size", batch_size}, {"max_in_flight", max_in_flight}, {"cache_only", cache_only}};
    j["segmentation"] = {{"abbreviations", abbreviations}};
    j["lenient"] = lenient;
    return j;
  }

  /// Collects every problem before failing with InvalidConfig.
  static RunConfig from_json(const nlohmann::json& j, std::filesystem::path base_dir) {
    RunConfig c;
    c.base_dir = std::move(base_dir);
    std::vector<std::string> problems;
    if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object");
    auto field = [&](const nlohmann::json& obj, const char* key, auto& out, const char* where) {
      if (!obj.contains(key) || obj.at(key).is_null()) return;
      try {
        obj.at(key).get_to(out);
      } catch (const nlohmann::json::exception&) {
        problems.push_back(std::string(where) + key + ": wrong type");
      }
    };
    field(j, "model_id", c.model_id, "");
    if (j.contains("paths")) {
      const auto& p = j.at("paths");
      if (!p.is_object()) {
        problems.push_back("paths: expected an object");
      } else {
        field(p, "responses", c.responses_path, "paths.");
        field(p, "clinical", c.clinical_path, "paths.");
        field(p, "anchors", c.anchors_path, "paths.");
        field(p, "cache", c.cache_path, "paths.");
        field(p, "sentiment_lexicon", c.sentiment_lexicon_path, "paths.");
      }
    }
    if (j.contains("reliabilities") && !j.at("reliabilities").is_null()) {
      const auto& r = j.at("reliabilities");
      if (!r.is_object()) problems.push_back("reliabilities: expected an object");
      for (auto it = r.begin(); r.is_object() && it != r.end(); ++it) {
        const auto scale = parse_scale(it.key());
        if (!scale) {
          problems.push_back("reliabilities: unknown scale '" + it.key() + "'");
        } else if (!it.value().is_number() || !(it.value().get<double>() > 0.0 && it.value().get<double>() <= 1.0)) {
          problems.push_back("reliabilities." + it.key() + ": must be a number in (0, 1]");
        } else {
          c.reliabilities[*scale] = it.value().get<double>();
        }
      }
    }
    if (j.contains("time_point")) {
      std::string tp;
      field(j, "time_point", tp, "");
      if (auto f = parse_time_point(tp)) c.time_point = *f;
      else problems.push_back("time_point: expected t1, t2 or pooled");
    }
    if (j.contains("construct") && !j.at("construct").is_null()) {
      std::string s;
      field(j, "construct", s, "");
      if (auto parsed = parse_construct(s)) c.construct = *parsed;
      else problems.push_back("construct: expected depression or worry");
    }
    if (j.contains("seed") && !j.at("seed").is_null()) {
      if (j.at("seed").is_number_unsigned()) c.seed = j.at("seed").get<std::uint64_t>();
      else problems.push_back("seed: expected a non-negative integer");
    }
    if (j.contains("embedding")) {
      const auto& e = j.at("embedding");
      field(e, "batch_size", c.batch_size, "embedding.");
      field(e, "max_in_flight", c.max_in_flight, "embedding.");
      field(e, "cache_only", c.cache_only, "embedding.");
      if (c.batch_size == 0) problems.push_back("embedding.batch_size: must be positive");
      if (c.max_in_flight == 0) problems.push_back("embedding.max_in_flight: must be positive");
    }
    if (j.contains("segmentation")) field(j.at("segmentation"), "abbreviations", c.abbreviations, "segmentation.");
    field(j, "lenient", c.lenient, "");
    if (!problems.empty()) {
      std::string msg = "invalid config:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw Error(ErrorCode::kInvalidConfig, msg);
    }
    return c;
  }
};

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot read config '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, path.string() + ": " + e.what());
  }
  return RunConfig::from_json(j, std::filesystem::absolute(path).parent_path());
}

inline void write_config(const RunConfig& config, const std::filesystem::path& path) {
  write_file_atomic(path, config.to_json().dump(2) + "\n");
}

}  // namespace semproj
