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

// Lexicon and rule-based sentiment scoring, rule-for-rule compatible with
// the VADER 3.3.2 reference implementation. Lexicon, emoji table and rule
// constants are data files; this header implements only the rules.
//
// Known divergence: empty input returns neu = 1 so that neg + neu + pos
// is always 1.

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "semproj/error.hpp"
#include "semproj/sha256.hpp"
#include "semproj/text.hpp"

namespace semproj {

struct SentimentConstants {
  double booster_increment = 0.293;
  double caps_increment = 0.733;
  double negation_scalar = -0.74;
  double normalization_alpha = 15.0;
  double exclamation_increment = 0.292;
  int exclamation_max_count = 4;
  double question_increment = 0.18;
  int question_max_count = 3;
  double question_saturation = 0.96;
  double but_before_weight = 0.5;
  double but_after_weight = 1.5;
  std::vector<double> booster_distance_weights{1.0, 0.95, 0.9};
  double never_so_this_weight = 1.25;
};

struct SentimentLexicon {
  std::string id;              // rules id plus lexicon checksum prefix
  std::string lexicon_sha256;  // of the valence file as loaded
  std::unordered_map<std::string, double> valence;
  std::unordered_map<std::string, double> boosters;
  std::unordered_set<std::string> negations;
  std::unordered_map<std::string, double> special_cases;
  std::unordered_map<char32_t, std::string> emoji;
  SentimentConstants constants;

  bool has(const std::string& lower) const { return valence.count(lower) > 0; }
};

struct SentimentResult {
  double neg = 0.0;
  double neu = 1.0;
  double pos = 0.0;
  double compound = 0.0;
  double distress = 0.0;  // == -compound
};

inline double distress_index(const SentimentResult& r) { return -r.compound; }

namespace detail {
inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kLexiconMissing, "cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
void for_each_line(const std::string& content, F&& f) {
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    const std::string_view line = text::trim(std::string_view(content).substr(start, end - start));
    if (!line.empty()) f(line);
    start = end + 1;
  }
}
}  // namespace detail

/// Loads `vader_lexicon.txt`, `emoji_utf8_lexicon.txt` and `vader_rules.json`
/// from `dir`. The valence file is token<TAB>mean[<TAB>...]; extra columns
/// are ignored.
inline SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& dir) {
  SentimentLexicon lex;
  const std::string lexicon = detail::read_file(dir / "vader_lexicon.txt");
  lex.lexicon_sha256 = sha256_hex(lexicon);
  std::size_t line_no = 0;
  detail::for_each_line(lexicon, [&](std::string_view line) {
    ++line_no;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::kParseError, "vader_lexicon.txt: entry " + std::to_string(line_no) + " has no tab");
    }
    const auto rest = line.substr(tab + 1);
    const std::string measure(rest.substr(0, rest.find('\t')));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(measure, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != measure.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::kParseError, "vader_lexicon.txt: bad valence '" + measure + "'");
    }
    lex.valence[std::string(line.substr(0, tab))] = v;
  });
  if (lex.valence.empty()) throw Error(ErrorCode::kLexiconMissing, "vader_lexicon.txt is empty");

  // Only single-code-point keys can ever match the per-character scan.
  detail::for_each_line(detail::read_file(dir / "emoji_utf8_lexicon.txt"), [&](std::string_view line) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) return;
    const auto key = line.substr(0, tab);
    const auto cp = text::decode_at(key, 0);
    if (cp.length != key.size()) return;
    auto desc = line.substr(tab + 1);
    desc = desc.substr(0, desc.find('\t'));
    lex.emoji[cp.value] = std::string(desc);
  });

  nlohmann::json rules;
  try {
    rules = nlohmann::json::parse(detail::read_file(dir / "vader_rules.json"));
    const auto& c = rules.at("constants");
    auto& k = lex.constants;
    k.booster_increment = c.at("booster_increment").get<double>();
    k.caps_increment = c.at("caps_increment").get<double>();
    k.negation_scalar = c.at("negation_scalar").get<double>();
    k.normalization_alpha = c.at("normalization_alpha").get<double>();
    k.exclamation_increment = c.at("exclamation_increment").get<double>();
    k.exclamation_max_count = c.at("exclamation_max_count").get<int>();
    k.question_increment = c.at("question_increment").get<double>();
    k.question_max_count = c.at("question_max_count").get<int>();
    k.question_saturation = c.at("question_saturation").get<double>();
    k.but_before_weight = c.at("but_before_weight").get<double>();
    k.but_after_weight = c.at("but_after_weight").get<double>();
    k.booster_distance_weights = c.at("booster_distance_weights").get<std::vector<double>>();
    k.never_so_this_weight = c.at("never_so_this_weight").get<double>();
    if (k.booster_distance_weights.size() != 3) {
      throw Error(ErrorCode::kParseError, "vader_rules.json: booster_distance_weights needs 3 entries");
    }
    for (const auto& n : rules.at("negations")) lex.negations.insert(n.get<std::string>());
    lex.boosters = rules.at("boosters").get<std::unordered_map<std::string, double>>();
    lex.special_cases = rules.at("special_cases").get<std::unordered_map<std::string, double>>();
    lex.id = rules.at("id").get<std::string>() + "+lexicon-" + lex.lexicon_sha256.substr(0, 12);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("vader_rules.json: ") + e.what());
  }
  return lex;
}

namespace detail {

inline bool is_ascii_punct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

/// Strips leading and trailing ASCII punctuation unless that leaves two or
/// fewer characters (likely an emoticon such as ":)").
inline std::string strip_punct_if_word(std::string_view token) {
  std::size_t b = 0, e = token.size();
  while (b < e && is_ascii_punct(token[b])) ++b;
  while (e > b && is_ascii_punct(token[e - 1])) --e;
  const auto stripped = token.substr(b, e - b);
  if (text::code_point_count(stripped) <= 2) return std::string(token);
  return std::string(stripped);
}

class SentimentScorer {
 public:
  SentimentScorer(const SentimentLexicon& lex, std::string_view raw) : lex_(lex), k_(lex.constants) {
    text_ = replace_emoji(raw);
    for (auto tok : text::split_whitespace(text_)) words_.push_back(strip_punct_if_word(tok));
    for (const auto& w : words_) lower_.push_back(text::to_lower(w));
    std::size_t caps = 0;
    for (const auto& w : words_) caps += text::is_all_caps(w) ? 1 : 0;
    const std::size_t diff = words_.size() - caps;
    cap_diff_ = diff > 0 && diff < words_.size();
  }

  SentimentResult run() {
    std::vector<double> sentiments;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (lex_.boosters.count(lower_[i])) {
        sentiments.push_back(0.0);
        continue;
      }
      if (i + 1 < words_.size() && lower_[i] == "kind" && lower_[i + 1] == "of") {
        sentiments.push_back(0.0);
        continue;
      }
      sentiments.push_back(valence_at(i));
    }
    but_check(sentiments);
    return score(sentiments);
  }

 private:
  std::string replace_emoji(std::string_view raw) const {
    std::string out;
    bool prev_space = true;
    for (std::size_t pos = 0; pos < raw.size();) {
      const auto cp = text::decode_at(raw, pos);
      auto it = lex_.emoji.find(cp.value);
      if (it != lex_.emoji.end()) {
        if (!prev_space) out.push_back(' ');
        out += it->second;
        prev_space = false;
      } else {
        out.append(raw.substr(pos, cp.length));
        prev_space = cp.value == U' ';
      }
      pos += cp.length;
    }
    return std::string(text::trim(out));
  }

  bool negated(const std::string& lower_word) const {
    return lex_.negations.count(lower_word) > 0 || lower_word.find("n't") != std::string::npos;
  }

  double scalar_inc_dec(std::size_t j, double valence) const {
    auto it = lex_.boosters.find(lower_[j]);
    if (it == lex_.boosters.end()) return 0.0;
    double scalar = it->second;
    if (valence < 0) scalar *= -1;
    if (text::is_all_caps(words_[j]) && cap_diff_) scalar += valence > 0 ? k_.caps_increment : -k_.caps_increment;
    return scalar;
  }

  double valence_at(std::size_t i) const {
    const std::string& item = lower_[i];
    auto hit = lex_.valence.find(item);
    if (hit == lex_.valence.end()) return 0.0;
    const double base = hit->second;
    double valence = base;
    const std::size_t n = words_.size();

    if (item == "no" && i != n - 1 && lex_.has(lower_[i + 1])) valence = 0.0;
    if ((i > 0 && lower_[i - 1] == "no") || (i > 1 && lower_[i - 2] == "no") ||
        (i > 2 && lower_[i - 3] == "no" && (lower_[i - 1] == "or" || lower_[i - 1] == "nor"))) {
      valence = base * k_.negation_scalar;
    }
    if (text::is_all_caps(words_[i]) && cap_diff_) valence += valence > 0 ? k_.caps_increment : -k_.caps_increment;

    for (std::size_t start = 0; start < 3; ++start) {
      if (i > start && !lex_.has(lower_[i - (start + 1)])) {
        double s = scalar_inc_dec(i - (start + 1), valence);
        if (start > 0 && s != 0) s *= k_.booster_distance_weights[start];
        valence += s;
        valence = negation_check(valence, start, i);
        if (start == 2) valence = special_idioms_check(valence, i);
      }
    }
    return least_check(valence, i);
  }

  double negation_check(double valence, std::size_t start, std::size_t i) const {
    const auto& w = lower_;
    if (start == 0) {
      if (negated(w[i - 1])) valence *= k_.negation_scalar;
    } else if (start == 1) {
      if (w[i - 2] == "never" && (w[i - 1] == "so" || w[i - 1] == "this")) {
        valence *= k_.never_so_this_weight;
      } else if (w[i - 2] == "without" && w[i - 1] == "doubt") {
        // unchanged
      } else if (negated(w[i - 2])) {
        valence *= k_.negation_scalar;
      }
    } else {
      // The reference groups this test as (never && so|this) || (so|this at i-1).
      const bool never_so = w[i - 3] == "never" && (w[i - 2] == "so" || w[i - 2] == "this");
      const bool so_this = w[i - 1] == "so" || w[i - 1] == "this";
      if (never_so || so_this) {
        valence *= k_.never_so_this_weight;
      } else if (w[i - 3] == "without" && (w[i - 2] == "doubt" || w[i - 1] == "doubt")) {
        // unchanged
      } else if (negated(w[i - 3])) {
        valence *= k_.negation_scalar;
      }
    }
    return valence;
  }

  double special_idioms_check(double valence, std::size_t i) const {
    const auto& w = lower_;
    const std::string onezero = w[i - 1] + " " + w[i];
    const std::string twoonezero = w[i - 2] + " " + w[i - 1] + " " + w[i];
    const std::string twoone = w[i - 2] + " " + w[i - 1];
    const std::string threetwoone = w[i - 3] + " " + w[i - 2] + " " + w[i - 1];
    const std::string threetwo = w[i - 3] + " " + w[i - 2];
    for (const auto* seq : {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
      auto it = lex_.special_cases.find(*seq);
      if (it != lex_.special_cases.end()) {
        valence = it->second;
        break;
      }
    }
    if (w.size() - 1 > i) {
      auto it = lex_.special_cases.find(w[i] + " " + w[i + 1]);
      if (it != lex_.special_cases.end()) valence = it->second;
    }
    if (w.size() - 1 > i + 1) {
      auto it = lex_.special_cases.find(w[i] + " " + w[i + 1] + " " + w[i + 2]);
      if (it != lex_.special_cases.end()) valence = it->second;
    }
    for (const auto* gram : {&threetwoone, &threetwo, &twoone}) {
      auto it = lex_.boosters.find(*gram);
      if (it != lex_.boosters.end()) valence += it->second;
    }
    return valence;
  }

  double least_check(double valence, std::size_t i) const {
    const auto& w = lower_;
    if (i > 1 && !lex_.has(w[i - 1]) && w[i - 1] == "least") {
      if (w[i - 2] != "at" && w[i - 2] != "very") valence *= k_.negation_scalar;
    } else if (i > 0 && !lex_.has(w[i - 1]) && w[i - 1] == "least") {
      valence *= k_.negation_scalar;
    }
    return valence;
  }

  // Mirrors the reference's list.index() lookup: each pass rescales the
  // first entry equal to the current value, which may sit before it.
  void but_check(std::vector<double>& s) const {
    std::size_t bi = lower_.size();
    for (std::size_t j = 0; j < lower_.size(); ++j) {
      if (lower_[j] == "but") {
        bi = j;
        break;
      }
    }
    if (bi == lower_.size()) return;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double v = s[k];
      std::size_t si = 0;
      while (s[si] != v) ++si;
      if (si < bi) {
        s[si] = v * k_.but_before_weight;
      } else if (si > bi) {
        s[si] = v * k_.but_after_weight;
      }
    }
  }

  double punctuation_amplifier() const {
    long ep = 0, qm = 0;
    for (char c : text_) {
      ep += c == '!';
      qm += c == '?';
    }
    const double ep_amp = static_cast<double>(std::min<long>(ep, k_.exclamation_max_count)) * k_.exclamation_increment;
    double qm_amp = 0.0;
    if (qm > 1) {
      qm_amp = qm <= k_.question_max_count ? static_cast<double>(qm) * k_.question_increment : k_.question_saturation;
    }
    return ep_amp + qm_amp;
  }

  SentimentResult score(const std::vector<double>& s) const {
    SentimentResult r;
    if (s.empty()) return r;
    double sum = 0.0;
    for (double v : s) sum += v;
    const double amp = punctuation_amplifier();
    if (sum > 0) {
      sum += amp;
    } else if (sum < 0) {
      sum -= amp;
    }
    r.compound = std::clamp(sum / std::sqrt(sum * sum + k_.normalization_alpha), -1.0, 1.0);

    double pos_sum = 0.0, neg_sum = 0.0;
    long neu_count = 0;
    for (double v : s) {
      if (v > 0) pos_sum += v + 1;
      if (v < 0) neg_sum += v - 1;
      if (v == 0) ++neu_count;
    }
    if (pos_sum > std::abs(neg_sum)) {
      pos_sum += amp;
    } else if (pos_sum < std::abs(neg_sum)) {
      neg_sum -= amp;
    }
    const double total = pos_sum + std::abs(neg_sum) + static_cast<double>(neu_count);
    r.pos = std::abs(pos_sum / total);
    r.neg = std::abs(neg_sum / total);
    r.neu = std::abs(static_cast<double>(neu_count) / total);
    r.distress = -r.compound;
    return r;
  }

  const SentimentLexicon& lex_;
  const SentimentConstants& k_;
  std::string text_;
  std::vector<std::string> words_;
  std::vector<std::string> lower_;
  bool cap_diff_ = false;
};

}  // namespace detail

inline SentimentResult analyze(std::string_view text, const SentimentLexicon& lexicon) {
  if (lexicon.valence.empty()) throw Error(ErrorCode::kLexiconMissing, "sentiment lexicon not loaded");
  return detail::SentimentScorer(lexicon, text).run();
}

}  // namespace semproj
