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

// Format-aware decomposition of responses into units, plus the odd/even
// halves used for split-half reliability.
//
//   select_words, write_words  commas if any comma is present, else whitespace
//   write_phrases              ';' and line breaks if present, else a fallback
//                              that breaks after sentence punctuation and
//                              before a capitalized non-initial word
//   write_text                 sentences ending in . ! ? followed by
//                              whitespace or end of text, minus abbreviations

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semproj/error.hpp"
#include "semproj/text.hpp"
#include "semproj/types.hpp"

namespace semproj {

struct RawResponse {
  std::string participant_id;
  int time_point = 1;
  Construct construct = Construct::kDepression;
  ResponseFormat format = ResponseFormat::kWriteText;
  std::string text;
};

struct SegmentedResponse {
  RawResponse source;
  std::vector<std::string> units;

  std::size_t k() const { return units.size(); }
};

inline const std::vector<std::string>& default_abbreviations() {
  static const std::vector<std::string> list = {"e.g.", "i.e.", "etc.", "Mr.", "Mrs.", "Dr.", "vs."};
  return list;
}

class Segmenter {
 public:
  Segmenter() : Segmenter(default_abbreviations()) {}

  explicit Segmenter(const std::vector<std::string>& abbreviations) {
    for (const auto& a : abbreviations) abbreviations_.insert(text::to_lower(a));
  }

  SegmentedResponse segment(const RawResponse& response) const {
    if (text::trim(response.text).empty()) {
      throw Error(ErrorCode::kInvalidInput, "empty response text for participant '" +
                                                response.participant_id + "'");
    }
    SegmentedResponse out{response, split(response.format, response.text)};
    if (out.units.empty()) {
      throw Error(ErrorCode::kEmptyAfterSegmentation,
                  "participant '" + response.participant_id + "' (" +
                      std::string(to_string(response.format)) + ")");
    }
    return out;
  }

  std::vector<std::string> split(ResponseFormat format, std::string_view s) const {
    switch (format) {
      case ResponseFormat::kSelectWords:
      case ResponseFormat::kWriteWords:
        return split_words(s);
      case ResponseFormat::kWritePhrases:
        return split_phrases(s);
      case ResponseFormat::kWriteText:
        return split_sentences(s);
    }
    return {};
  }

 private:
  static void push_unit(std::vector<std::string>& out, std::string_view piece,
                        std::string_view trailing) {
    piece = text::trim(piece);
    while (!piece.empty() && trailing.find(piece.back()) != std::string_view::npos) {
      piece.remove_suffix(1);
      piece = text::trim(piece);
    }
    if (!piece.empty()) out.emplace_back(piece);
  }

  static std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    if (s.find(',') != std::string_view::npos) {
      std::size_t start = 0;
      for (std::size_t pos; (pos = s.find(',', start)) != std::string_view::npos; start = pos + 1) {
        push_unit(out, s.substr(start, pos - start), ",;");
      }
      push_unit(out, s.substr(start), ",;");
    } else {
      for (auto token : text::split_whitespace(s)) push_unit(out, token, ",;");
    }
    return out;
  }

  std::vector<std::string> split_phrases(std::string_view s) const {
    std::vector<std::string> out;
    const auto cps = text::code_points(s);
    bool has_delimiter = false;
    for (const auto& cp : cps) {
      if (cp.value == U';' || text::is_line_break(cp.value)) has_delimiter = true;
    }
    if (has_delimiter) {
      std::size_t start = 0;
      for (const auto& cp : cps) {
        if (cp.value == U';' || text::is_line_break(cp.value)) {
          push_unit(out, s.substr(start, cp.offset - start), ";");
          start = cp.offset + cp.length;
        }
      }
      push_unit(out, s.substr(start), ";");
      return out;
    }

    // Fallback: word boundaries where the previous word closes a sentence,
    // or where a capitalized word follows an unpunctuated one.
    const auto words = text::split_whitespace(s);
    std::size_t unit_begin = 0;
    for (std::size_t j = 1; j < words.size(); ++j) {
      const std::string_view prev = words[j - 1];
      const bool prev_closes = text::ends_with_any(prev, ".!?") && !is_abbreviation(prev);
      const bool prev_punct = text::ends_with_any(prev, ".!?");
      const bool capitalized = text::is_upper_letter(text::decode_at(words[j], 0).value);
      if (prev_closes || (capitalized && !prev_punct)) {
        push_unit(out, span_of(s, words[unit_begin], prev), ";");
        unit_begin = j;
      }
    }
    if (!words.empty()) push_unit(out, span_of(s, words[unit_begin], words.back()), ";");
    return out;
  }

  std::vector<std::string> split_sentences(std::string_view s) const {
    static constexpr std::string_view kTerminal = ".!?";
    static constexpr std::string_view kClosers = "\"')]";
    std::vector<std::string> out;
    std::size_t start = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
      if (kTerminal.find(s[pos]) == std::string_view::npos) {
        pos += text::decode_at(s, pos).length;
        continue;
      }
      std::size_t end = pos;
      while (end < s.size() && kTerminal.find(s[end]) != std::string_view::npos) ++end;
      const std::size_t punct_end = end;
      while (end < s.size()) {
        if (kClosers.find(s[end]) != std::string_view::npos) {
          ++end;
          continue;
        }
        const auto cp = text::decode_at(s, end);
        if (cp.value == 0x201D || cp.value == 0x2019) {  // closing smart quotes
          end += cp.length;
          continue;
        }
        break;
      }
      const bool at_boundary = end == s.size() || text::is_space(text::decode_at(s, end).value);
      if (at_boundary && !is_abbreviation(last_token(s.substr(0, punct_end)))) {
        push_unit(out, s.substr(start, end - start), "");
        start = end;
      }
      pos = end;
    }
    push_unit(out, s.substr(start), "");
    return out;
  }

  static std::string_view span_of(std::string_view whole, std::string_view first,
                                  std::string_view last) {
    const std::size_t begin = static_cast<std::size_t>(first.data() - whole.data());
    const std::size_t end = static_cast<std::size_t>(last.data() - whole.data()) + last.size();
    return whole.substr(begin, end - begin);
  }

  static std::string_view last_token(std::string_view s) {
    auto words = text::split_whitespace(s);
    return words.empty() ? std::string_view{} : words.back();
  }

  bool is_abbreviation(std::string_view token) const {
    while (!token.empty() && (token.front() == '(' || token.front() == '"' || token.front() == '\'')) {
      token.remove_prefix(1);
    }
    return abbreviations_.count(text::to_lower(token)) > 0;
  }

  std::set<std::string> abbreviations_;
};

inline SegmentedResponse segment(const RawResponse& response) {
  static const Segmenter segmenter;
  return segmenter.segment(response);
}

/// Units at 1-based odd positions go to the first half, even to the second.
template <class T>
std::pair<std::vector<T>, std::vector<T>> odd_even_split(const std::vector<T>& units) {
  if (units.size() < 2) {
    throw Error(ErrorCode::kTooFewUnits, "need at least 2 units, got " + std::to_string(units.size()));
  }
  std::pair<std::vector<T>, std::vector<T>> halves;
  for (std::size_t i = 0; i < units.size(); ++i) {
    (i % 2 == 0 ? halves.first : halves.second).push_back(units[i]);
  }
  return halves;
}

inline std::string_view unit_joiner(ResponseFormat format) {
  if (is_word_format(format)) return ", ";
  if (format == ResponseFormat::kWritePhrases) return "; ";
  return " ";
}

inline std::string join_units(const std::vector<std::string>& units, ResponseFormat format) {
  if (units.empty()) throw Error(ErrorCode::kInvalidInput, "join_units: no units");
  const std::string_view sep = unit_joiner(format);
  std::string out = units.front();
  for (std::size_t i = 1; i < units.size(); ++i) {
    out += sep;
    out += units[i];
  }
  return out;
}

}  // namespace semproj
