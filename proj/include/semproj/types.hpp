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

// Closed vocabularies shared by every module, with their wire spellings.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semproj/error.hpp"

namespace semproj {

using Embedding = std::vector<float>;

enum class Construct { kDepression, kWorry };
enum class AnchorKind { kWord, kItem };
enum class ResponseFormat { kSelectWords, kWriteWords, kWritePhrases, kWriteText };
enum class Representation { kWhole, kUnitMean, kUnitMaxAbs };
enum class Scale { kPHQ9, kCESD, kGAD7, kPSWQ };
enum class TimePointFilter { kT1, kT2, kPooled };

inline constexpr std::array<Construct, 2> kAllConstructs = {Construct::kDepression,
                                                            Construct::kWorry};
inline constexpr std::array<ResponseFormat, 4> kAllFormats = {
    ResponseFormat::kSelectWords, ResponseFormat::kWriteWords, ResponseFormat::kWritePhrases,
    ResponseFormat::kWriteText};
inline constexpr std::array<Representation, 3> kAllRepresentations = {
    Representation::kWhole, Representation::kUnitMean, Representation::kUnitMaxAbs};

inline std::string_view to_string(Construct c) {
  return c == Construct::kDepression ? "depression" : "worry";
}

inline std::string_view to_string(AnchorKind k) { return k == AnchorKind::kWord ? "word" : "item"; }

inline std::string_view to_string(ResponseFormat f) {
  switch (f) {
    case ResponseFormat::kSelectWords: return "select_words";
    case ResponseFormat::kWriteWords: return "write_words";
    case ResponseFormat::kWritePhrases: return "write_phrases";
    case ResponseFormat::kWriteText: return "write_text";
  }
  return "";
}

inline std::string_view to_string(Representation r) {
  switch (r) {
    case Representation::kWhole: return "whole";
    case Representation::kUnitMean: return "unit_mean";
    case Representation::kUnitMaxAbs: return "unit_maxabs";
  }
  return "";
}

inline std::string_view to_string(Scale s) {
  switch (s) {
    case Scale::kPHQ9: return "PHQ9";
    case Scale::kCESD: return "CESD";
    case Scale::kGAD7: return "GAD7";
    case Scale::kPSWQ: return "PSWQ";
  }
  return "";
}

inline std::string_view to_string(TimePointFilter t) {
  switch (t) {
    case TimePointFilter::kT1: return "t1";
    case TimePointFilter::kT2: return "t2";
    case TimePointFilter::kPooled: return "pooled";
  }
  return "";
}

namespace detail {
template <class Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view text, const std::array<Enum, N>& values) {
  for (Enum v : values) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}
}  // namespace detail

inline std::optional<Construct> parse_construct(std::string_view s) {
  return detail::parse_enum(s, kAllConstructs);
}
inline std::optional<AnchorKind> parse_anchor_kind(std::string_view s) {
  return detail::parse_enum(s, std::array{AnchorKind::kWord, AnchorKind::kItem});
}
inline std::optional<ResponseFormat> parse_format(std::string_view s) {
  return detail::parse_enum(s, kAllFormats);
}
inline std::optional<Representation> parse_representation(std::string_view s) {
  return detail::parse_enum(s, kAllRepresentations);
}
inline std::optional<Scale> parse_scale(std::string_view s) {
  return detail::parse_enum(s, std::array{Scale::kPHQ9, Scale::kCESD, Scale::kGAD7, Scale::kPSWQ});
}
inline std::optional<TimePointFilter> parse_time_point(std::string_view s) {
  return detail::parse_enum(
      s, std::array{TimePointFilter::kT1, TimePointFilter::kT2, TimePointFilter::kPooled});
}

inline bool accepts(TimePointFilter filter, int time_point) {
  switch (filter) {
    case TimePointFilter::kT1: return time_point == 1;
    case TimePointFilter::kT2: return time_point == 2;
    case TimePointFilter::kPooled: return true;
  }
  return false;
}

/// Clinical criteria used for each construct, in report column order.
inline std::array<Scale, 2> scales_for(Construct c) {
  if (c == Construct::kDepression) return {Scale::kCESD, Scale::kPHQ9};
  return {Scale::kGAD7, Scale::kPSWQ};
}

inline bool is_word_format(ResponseFormat f) {
  return f == ResponseFormat::kSelectWords || f == ResponseFormat::kWriteWords;
}

/// One row of the validity tables: a response format scored with one
/// representation. Only write_text has more than one.
struct FormatRow {
  ResponseFormat format;
  Representation representation;

  std::string name() const {
    std::string out(to_string(format));
    if (representation == Representation::kUnitMean) out += "_mean";
    if (representation == Representation::kUnitMaxAbs) out += "_maxabs";
    return out;
  }
  friend bool operator==(const FormatRow&, const FormatRow&) = default;
};

/// The six report rows, in table order.
inline const std::vector<FormatRow>& report_rows() {
  static const std::vector<FormatRow> rows = {
      {ResponseFormat::kSelectWords, Representation::kWhole},
      {ResponseFormat::kWritePhrases, Representation::kWhole},
      {ResponseFormat::kWriteWords, Representation::kWhole},
      {ResponseFormat::kWriteText, Representation::kWhole},
      {ResponseFormat::kWriteText, Representation::kUnitMaxAbs},
      {ResponseFormat::kWriteText, Representation::kUnitMean},
  };
  return rows;
}

template <class T>
T require(std::optional<T> value, std::string_view what, std::string_view text) {
  if (!value) {
    throw Error(ErrorCode::kParseError,
                "unknown " + std::string(what) + " '" + std::string(text) + "'");
  }
  return *value;
}

}  // namespace semproj
