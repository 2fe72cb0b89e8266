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

// Batch steps shared by the command-line tool and the test harnesses.

#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "semproj/axes.hpp"
#include "semproj/datastore.hpp"
#include "semproj/embedder.hpp"
#include "semproj/evaluation.hpp"
#include "semproj/projection.hpp"
#include "semproj/segmentation.hpp"
#include "semproj/sentiment.hpp"

namespace semproj {

/// Builds one axis per anchor set, embedding every anchor once.
inline AxisRegistry build_axes(const std::vector<AnchorSet>& sets, TextEmbedder& embedder) {
  std::vector<std::string> texts;
  for (const auto& s : sets) {
    texts.insert(texts.end(), s.positive.begin(), s.positive.end());
    texts.insert(texts.end(), s.negative.begin(), s.negative.end());
  }
  const auto vectors = embed_unique(embedder, texts);
  AxisRegistry registry;
  for (const auto& s : sets) registry.add(build_axis(s, vectors, embedder.model_id()));
  return registry;
}

inline std::vector<SegmentedResponse> segment_all(const std::vector<RawResponse>& responses,
                                                  const Segmenter& segmenter, TimePointFilter filter,
                                                  std::optional<Construct> construct = std::nullopt) {
  std::vector<SegmentedResponse> out;
  for (const auto& r : responses) {
    if (!accepts(filter, r.time_point) || (construct && r.construct != *construct)) continue;
    out.push_back(segmenter.segment(r));
  }
  return out;
}

/// Scores every response on every axis of its construct. All texts are
/// embedded up front in one call; records come back in file order.
inline std::vector<ScoreRecord> score_all(const std::vector<SegmentedResponse>& responses, const AxisRegistry& axes,
                                          TextEmbedder& embedder) {
  for (const SemanticAxis* a : axes.all()) detail::require_model(embedder, *a);
  std::vector<std::string> texts;
  std::set<std::string> seen;
  for (const auto& r : responses) {
    if (seen.insert(r.source.text).second) texts.push_back(r.source.text);
    if (r.source.format != ResponseFormat::kWriteText) continue;
    for (const auto& u : r.units) {
      if (seen.insert(u).second) texts.push_back(u);
    }
  }
  const auto vectors = embed_unique(embedder, texts);

  std::vector<ScoreRecord> out;
  for (const auto& r : responses) {
    const auto& src = r.source;
    for (const SemanticAxis* axis : axes.for_construct(src.construct)) {
      out.push_back(make_record(src, *axis, Representation::kWhole, project(vectors.at(src.text), *axis)));
      if (src.format != ResponseFormat::kWriteText) continue;
      std::vector<double> unit_scores;
      for (const auto& u : r.units) unit_scores.push_back(project(vectors.at(u), *axis));
      out.push_back(make_record(src, *axis, Representation::kUnitMean, mean_score(unit_scores)));
      out.push_back(make_record(src, *axis, Representation::kUnitMaxAbs, maxabs_score(unit_scores)));
    }
  }
  return out;
}

inline std::vector<SentimentRecord> score_sentiment(const std::vector<RawResponse>& responses,
                                                    const SentimentLexicon& lexicon, TimePointFilter filter,
                                                    std::optional<Construct> construct = std::nullopt) {
  std::vector<SentimentRecord> out;
  for (const auto& r : responses) {
    if (!accepts(filter, r.time_point) || (construct && r.construct != *construct)) continue;
    const auto s = analyze(r.text, lexicon);
    out.push_back({r.participant_id, r.time_point, r.construct, r.format, s.compound, s.distress, s.neg, s.neu, s.pos});
  }
  return out;
}

}  // namespace semproj
