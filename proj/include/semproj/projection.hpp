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

// Scalar positions of texts along a semantic axis.
//
// project(x) = (x . a) / |a|; positive values sit toward the healthy pole.
// Every stored record also carries severity = -projection so that higher
// always means more symptomatic.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "semproj/axes.hpp"
#include "semproj/embedder.hpp"
#include "semproj/segmentation.hpp"

namespace semproj {

struct ScoreRecord {
  std::string participant_id;
  int time_point = 1;
  Construct construct = Construct::kDepression;
  ResponseFormat format = ResponseFormat::kWriteText;
  std::string axis_name;
  Representation representation = Representation::kWhole;
  double projection = 0.0;
  double severity = 0.0;

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

template <class T>
double project(std::span<const T> x, const SemanticAxis& axis) {
  if (x.size() != axis.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "vector of dimension " + std::to_string(x.size()) +
                                                   " against axis " + axis.name + " (" +
                                                   std::to_string(axis.dim) + ")");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += static_cast<double>(x[i]) * axis.direction[i];
  return dot / axis.norm;
}

inline double project(const Embedding& x, const SemanticAxis& axis) {
  return project(std::span<const float>(x), axis);
}

inline double mean_score(std::span<const double> unit_scores) {
  if (unit_scores.empty()) throw Error(ErrorCode::kInvalidInput, "no unit scores");
  double sum = 0.0;
  for (double s : unit_scores) sum += s;
  return sum / static_cast<double>(unit_scores.size());
}

/// Signed score of the unit with the largest magnitude; the earliest unit
/// wins ties.
inline double maxabs_score(std::span<const double> unit_scores) {
  if (unit_scores.empty()) throw Error(ErrorCode::kInvalidInput, "no unit scores");
  double best = unit_scores.front();
  for (double s : unit_scores.subspan(1)) {
    if (std::abs(s) > std::abs(best)) best = s;
  }
  return best;
}

namespace detail {
inline void require_model(const TextEmbedder& embedder, const SemanticAxis& axis) {
  if (embedder.model_id() != axis.model_id) {
    throw Error(ErrorCode::kModelMismatch, "axis " + axis.name + " was built with '" + axis.model_id +
                                               "' but embeddings come from '" + embedder.model_id() +
                                               "'");
  }
}

inline std::vector<double> unit_scores(const std::vector<std::string>& units, const SemanticAxis& axis,
                                       TextEmbedder& embedder) {
  if (units.empty()) throw Error(ErrorCode::kInvalidInput, "no units");
  require_model(embedder, axis);
  const auto vectors = embedder.embed_texts(units);
  std::vector<double> scores;
  scores.reserve(vectors.size());
  for (const auto& v : vectors) scores.push_back(project(v, axis));
  return scores;
}
}  // namespace detail

inline double score_whole(const std::string& text, const SemanticAxis& axis, TextEmbedder& embedder) {
  if (text::trim(text).empty()) throw Error(ErrorCode::kInvalidInput, "empty text");
  detail::require_model(embedder, axis);
  return project(embedder.embed_texts({text}).front(), axis);
}

inline double score_units_mean(const std::vector<std::string>& units, const SemanticAxis& axis,
                               TextEmbedder& embedder) {
  return mean_score(detail::unit_scores(units, axis, embedder));
}

inline double score_units_maxabs(const std::vector<std::string>& units, const SemanticAxis& axis,
                                 TextEmbedder& embedder) {
  return maxabs_score(detail::unit_scores(units, axis, embedder));
}

inline ScoreRecord make_record(const RawResponse& r, const SemanticAxis& axis, Representation rep,
                               double projection) {
  return ScoreRecord{r.participant_id, r.time_point, r.construct, r.format,
                     axis.name,        rep,          projection,  -projection};
}

/// Word and phrase formats yield one whole-response record; write_text
/// yields whole, unit_mean and unit_maxabs. All embeddings are fetched in
/// one call, so a failure produces no records at all.
inline std::vector<ScoreRecord> score_response(const SegmentedResponse& response, const SemanticAxis& axis,
                                               TextEmbedder& embedder) {
  detail::require_model(embedder, axis);
  const RawResponse& src = response.source;
  if (response.units.empty()) throw Error(ErrorCode::kInvalidInput, "response has no units");
  if (src.construct != axis.construct) {
    throw Error(ErrorCode::kInvalidInput, "axis " + axis.name + " does not measure " +
                                              std::string(to_string(src.construct)));
  }

  std::vector<std::string> texts{src.text};
  const bool aggregate = src.format == ResponseFormat::kWriteText;
  if (aggregate) texts.insert(texts.end(), response.units.begin(), response.units.end());
  const auto vectors = embedder.embed_texts(texts);

  std::vector<ScoreRecord> out;
  out.push_back(make_record(src, axis, Representation::kWhole, project(vectors[0], axis)));
  if (aggregate) {
    std::vector<double> scores;
    for (std::size_t i = 1; i < vectors.size(); ++i) scores.push_back(project(vectors[i], axis));
    out.push_back(make_record(src, axis, Representation::kUnitMean, mean_score(scores)));
    out.push_back(make_record(src, axis, Representation::kUnitMaxAbs, maxabs_score(scores)));
  }
  return out;
}

}  // namespace semproj
