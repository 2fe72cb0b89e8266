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

// Loaders validate every record and report all problems, with locations,
// before failing. Writers are atomic (temp file + rename) and emit sorted,
// byte-reproducible output.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "semproj/axes.hpp"
#include "semproj/csv.hpp"
#include "semproj/error.hpp"
#include "semproj/projection.hpp"
#include "semproj/segmentation.hpp"
#include "semproj/types.hpp"

namespace semproj {

struct ClinicalRecord {
  std::string participant_id;
  int time_point = 1;
  int phq9 = 0;
  int cesd = 0;
  int gad7 = 0;
  int pswq = 16;

  int total(Scale s) const {
    switch (s) {
      case Scale::kPHQ9: return phq9;
      case Scale::kCESD: return cesd;
      case Scale::kGAD7: return gad7;
      case Scale::kPSWQ: return pswq;
    }
    return 0;
  }

  friend bool operator==(const ClinicalRecord&, const ClinicalRecord&) = default;
};

struct ScaleRange {
  int min;
  int max;
};

inline ScaleRange scale_range(Scale s) {
  switch (s) {
    case Scale::kPHQ9: return {0, 27};
    case Scale::kCESD: return {0, 60};
    case Scale::kGAD7: return {0, 21};
    case Scale::kPSWQ: return {16, 80};
  }
  return {0, 0};
}

/// Raw-text sentiment of one response.
struct SentimentRecord {
  std::string participant_id;
  int time_point = 1;
  Construct construct = Construct::kDepression;
  ResponseFormat format = ResponseFormat::kWriteText;
  double compound = 0.0;
  double distress = 0.0;
  double neg = 0.0;
  double neu = 1.0;
  double pos = 0.0;
};

/// Problems found while loading. Lenient loads keep them as warnings.
struct LoadIssues {
  std::vector<std::string> messages;
};

namespace detail {

struct Issue {
  ErrorCode code;
  std::string message;
};

[[noreturn]] inline void fail_with(const std::vector<Issue>& issues) {
  std::string msg = std::to_string(issues.size()) + " problem(s):";
  for (const auto& i : issues) msg += "\n  " + i.message;
  throw Error(issues.front().code, msg);
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool parse_int(std::string_view s, int& out) {
  s = text::trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_double(std::string_view s, double& out) {
  s = text::trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace detail

/// Shortest-stable 9-significant-digit rendering used in every CSV output.
inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // no negative zero in outputs
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Writes via a sibling temp file and rename, so readers never observe a
/// partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + tmp + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot move '" + tmp + "' into place: " + ec.message());
}

// ---------------------------------------------------------------- responses

inline std::vector<RawResponse> parse_responses(std::string_view content, const std::string& source,
                                                bool lenient = false, LoadIssues* issues_out = nullptr) {
  std::vector<RawResponse> out;
  std::vector<detail::Issue> issues;
  std::map<std::tuple<std::string, int, Construct, ResponseFormat>, std::size_t> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (text::trim(line).empty()) {
      if (end == content.size()) break;
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    try {
      const auto j = nlohmann::json::parse(line);
      RawResponse r;
      r.participant_id = j.at("participant_id").get<std::string>();
      r.time_point = j.at("time_point").get<int>();
      const auto construct = j.at("construct").get<std::string>();
      const auto format = j.at("format").get<std::string>();
      r.text = j.at("text").get<std::string>();
      std::string problem;
      if (text::trim(r.participant_id).empty()) problem = "empty participant_id";
      else if (r.time_point != 1 && r.time_point != 2) problem = "time_point must be 1 or 2";
      else if (!parse_construct(construct)) problem = "unknown construct '" + construct + "'";
      else if (!parse_format(format)) problem = "unknown format '" + format + "'";
      else if (text::trim(r.text).empty()) problem = "empty text";
      if (!problem.empty()) {
        issues.push_back({ErrorCode::kParseError, where + ": " + problem});
        continue;
      }
      r.construct = *parse_construct(construct);
      r.format = *parse_format(format);
      auto key = std::make_tuple(r.participant_id, r.time_point, r.construct, r.format);
      if (auto it = seen.find(key); it != seen.end()) {
        issues.push_back({ErrorCode::kDuplicateKey, where + ": duplicate of line " + std::to_string(it->second) +
                                                        " (" + r.participant_id + ", t" +
                                                        std::to_string(r.time_point) + ", " + construct + ", " +
                                                        format + ")"});
        continue;
      }
      seen.emplace(std::move(key), line_no);
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      issues.push_back({ErrorCode::kParseError, where + ": " + e.what()});
    }
    if (end == content.size()) break;
  }
  if (!issues.empty()) {
    if (!lenient) detail::fail_with(issues);
    if (issues_out) {
      for (const auto& i : issues) issues_out->messages.push_back(i.message);
    }
  }
  return out;
}

inline std::vector<RawResponse> load_responses(const std::filesystem::path& path, bool lenient = false,
                                               LoadIssues* issues = nullptr) {
  return parse_responses(detail::read_text_file(path), path.string(), lenient, issues);
}

inline std::string format_responses(std::vector<RawResponse> responses) {
  std::sort(responses.begin(), responses.end(), [](const RawResponse& a, const RawResponse& b) {
    return std::tie(a.participant_id, a.time_point, a.construct, a.format) <
           std::tie(b.participant_id, b.time_point, b.construct, b.format);
  });
  std::string out;
  for (const auto& r : responses) {
    nlohmann::ordered_json j;
    j["participant_id"] = r.participant_id;
    j["time_point"] = r.time_point;
    j["construct"] = to_string(r.construct);
    j["format"] = to_string(r.format);
    j["text"] = r.text;
    out += j.dump() + "\n";
  }
  return out;
}

inline void write_responses(const std::vector<RawResponse>& responses, const std::filesystem::path& path) {
  write_file_atomic(path, format_responses(responses));
}

// ---------------------------------------------------------------- clinical

inline constexpr std::string_view kClinicalHeader = "participant_id,time_point,phq9,cesd,gad7,pswq";

inline std::vector<ClinicalRecord> parse_clinical(std::string_view content, const std::string& source) {
  const auto rows = csv::parse(content, source);
  std::vector<detail::Issue> issues;
  if (rows.empty()) throw Error(ErrorCode::kParseError, source + ": empty file");
  std::string header;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) header += (i ? "," : "") + std::string(text::trim(rows[0].fields[i]));
  if (header != kClinicalHeader) {
    throw Error(ErrorCode::kParseError, source + ":1: header must be '" + std::string(kClinicalHeader) + "'");
  }
  static constexpr std::array<Scale, 4> kColumns{Scale::kPHQ9, Scale::kCESD, Scale::kGAD7, Scale::kPSWQ};
  std::vector<ClinicalRecord> out;
  std::map<std::pair<std::string, int>, std::size_t> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = source + ":" + std::to_string(row.line);
    if (row.fields.size() != 6) {
      issues.push_back({ErrorCode::kParseError, where + ": expected 6 fields, got " + std::to_string(row.fields.size())});
      continue;
    }
    ClinicalRecord rec;
    rec.participant_id = std::string(text::trim(row.fields[0]));
    bool ok = !rec.participant_id.empty();
    if (!ok) issues.push_back({ErrorCode::kParseError, where + ": empty participant_id"});
    if (!detail::parse_int(row.fields[1], rec.time_point) || (rec.time_point != 1 && rec.time_point != 2)) {
      issues.push_back({ErrorCode::kParseError, where + ": time_point must be 1 or 2"});
      ok = false;
    }
    int* slots[4] = {&rec.phq9, &rec.cesd, &rec.gad7, &rec.pswq};
    for (std::size_t c = 0; c < 4; ++c) {
      const std::string field(to_string(kColumns[c]));
      if (!detail::parse_int(row.fields[c + 2], *slots[c])) {
        issues.push_back({ErrorCode::kParseError, where + ": " + field + " is not an integer ('" + row.fields[c + 2] + "')"});
        ok = false;
        continue;
      }
      const auto range = scale_range(kColumns[c]);
      if (*slots[c] < range.min || *slots[c] > range.max) {
        issues.push_back({ErrorCode::kRangeViolation, where + ": " + field + " = " + std::to_string(*slots[c]) +
                                                          " outside [" + std::to_string(range.min) + ", " +
                                                          std::to_string(range.max) + "]"});
        ok = false;
      }
    }
    if (!ok) continue;
    auto key = std::make_pair(rec.participant_id, rec.time_point);
    if (auto it = seen.find(key); it != seen.end()) {
      issues.push_back({ErrorCode::kDuplicateKey, where + ": duplicate (" + rec.participant_id + ", " +
                                                      std::to_string(rec.time_point) + ")"});
      continue;
    }
    seen.emplace(std::move(key), row.line);
    out.push_back(std::move(rec));
  }
  if (!issues.empty()) detail::fail_with(issues);
  return out;
}

inline std::vector<ClinicalRecord> load_clinical(const std::filesystem::path& path) {
  return parse_clinical(detail::read_text_file(path), path.string());
}

inline std::string format_clinical(std::vector<ClinicalRecord> records) {
  std::sort(records.begin(), records.end(), [](const ClinicalRecord& a, const ClinicalRecord& b) {
    return std::tie(a.participant_id, a.time_point) < std::tie(b.participant_id, b.time_point);
  });
  std::string out = std::string(kClinicalHeader) + "\n";
  for (const auto& r : records) {
    out += csv::format_row({r.participant_id, std::to_string(r.time_point), std::to_string(r.phq9),
                            std::to_string(r.cesd), std::to_string(r.gad7), std::to_string(r.pswq)});
  }
  return out;
}

inline void write_clinical(const std::vector<ClinicalRecord>& records, const std::filesystem::path& path) {
  write_file_atomic(path, format_clinical(records));
}

/// Every response needs a clinical record for its (participant, time point)
/// when evaluation is requested.
inline void check_references(const std::vector<RawResponse>& responses, const std::vector<ClinicalRecord>& clinical) {
  std::set<std::pair<std::string, int>> have;
  for (const auto& c : clinical) have.emplace(c.participant_id, c.time_point);
  std::set<std::pair<std::string, int>> missing;
  for (const auto& r : responses) {
    if (!have.count({r.participant_id, r.time_point})) missing.emplace(r.participant_id, r.time_point);
  }
  if (missing.empty()) return;
  std::string msg = "responses without clinical records:";
  for (const auto& [pid, tp] : missing) msg += " (" + pid + ", " + std::to_string(tp) + ")";
  throw Error(ErrorCode::kDanglingReference, msg);
}

// ---------------------------------------------------------------- anchors

inline std::vector<AnchorSet> parse_anchors(std::string_view content, const std::string& source) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, source + ": " + e.what());
  }
  if (!arr.is_array()) throw Error(ErrorCode::kParseError, source + ": expected a JSON array");
  std::vector<detail::Issue> issues;
  std::vector<AnchorSet> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = source + "[" + std::to_string(i) + "]";
    try {
      const auto& j = arr[i];
      AnchorSet a;
      a.axis_name = j.at("axis").get<std::string>();
      const auto construct = j.at("construct").get<std::string>();
      const auto kind = j.at("kind").get<std::string>();
      a.positive = j.at("positive").get<std::vector<std::string>>();
      a.negative = j.at("negative").get<std::vector<std::string>>();
      if (!parse_construct(construct)) {
        issues.push_back({ErrorCode::kParseError, where + ": unknown construct '" + construct + "'"});
        continue;
      }
      if (!parse_anchor_kind(kind)) {
        issues.push_back({ErrorCode::kParseError, where + ": unknown kind '" + kind + "'"});
        continue;
      }
      a.construct = *parse_construct(construct);
      a.kind = *parse_anchor_kind(kind);
      for (const auto& v : a.violations()) issues.push_back({ErrorCode::kInvalidInput, where + ": " + v});
      if (!names.insert(a.axis_name).second) {
        issues.push_back({ErrorCode::kDuplicateKey, where + ": duplicate axis '" + a.axis_name + "'"});
      }
      out.push_back(std::move(a));
    } catch (const nlohmann::json::exception& e) {
      issues.push_back({ErrorCode::kParseError, where + ": " + e.what()});
    }
  }
  if (!issues.empty()) detail::fail_with(issues);
  return out;
}

inline std::vector<AnchorSet> load_anchors(const std::filesystem::path& path) {
  return parse_anchors(detail::read_text_file(path), path.string());
}

inline std::string format_anchors(const std::vector<AnchorSet>& sets) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& a : sets) {
    nlohmann::ordered_json j;
    j["axis"] = a.axis_name;
    j["construct"] = to_string(a.construct);
    j["kind"] = to_string(a.kind);
    j["positive"] = a.positive;
    j["negative"] = a.negative;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------- scores

inline constexpr std::string_view kScoresHeader =
    "participant_id,time_point,construct,format,axis,representation,projection,severity";

inline bool score_order(const ScoreRecord& a, const ScoreRecord& b) {
  const auto ka = std::make_tuple(std::cref(a.participant_id), a.time_point, to_string(a.construct), to_string(a.format),
                                  std::cref(a.axis_name), to_string(a.representation));
  const auto kb = std::make_tuple(std::cref(b.participant_id), b.time_point, to_string(b.construct), to_string(b.format),
                                  std::cref(b.axis_name), to_string(b.representation));
  return ka < kb;
}

inline std::string format_scores(std::vector<ScoreRecord> records) {
  std::sort(records.begin(), records.end(), score_order);
  std::string out = std::string(kScoresHeader) + "\n";
  for (const auto& r : records) {
    out += csv::format_row({r.participant_id, std::to_string(r.time_point), std::string(to_string(r.construct)),
                            std::string(to_string(r.format)), r.axis_name, std::string(to_string(r.representation)),
                            format_real(r.projection), format_real(r.severity)});
  }
  return out;
}

inline void write_scores(const std::vector<ScoreRecord>& records, const std::filesystem::path& path) {
  write_file_atomic(path, format_scores(records));
}

inline std::vector<ScoreRecord> parse_scores(std::string_view content, const std::string& source) {
  const auto rows = csv::parse(content, source);
  if (rows.empty()) throw Error(ErrorCode::kParseError, source + ": empty file");
  std::string header;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) header += (i ? "," : "") + rows[0].fields[i];
  if (header != kScoresHeader) throw Error(ErrorCode::kParseError, source + ":1: unexpected header");
  std::vector<detail::Issue> issues;
  std::vector<ScoreRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    const std::string where = source + ":" + std::to_string(rows[r].line);
    ScoreRecord s;
    const auto c = f.size() == 8 ? parse_construct(f[2]) : std::nullopt;
    const auto fmt = f.size() == 8 ? parse_format(f[3]) : std::nullopt;
    const auto rep = f.size() == 8 ? parse_representation(f[5]) : std::nullopt;
    if (f.size() != 8 || !c || !fmt || !rep || !detail::parse_int(f[1], s.time_point) ||
        !detail::parse_double(f[6], s.projection) || !detail::parse_double(f[7], s.severity) || f[0].empty()) {
      issues.push_back({ErrorCode::kParseError, where + ": malformed score row"});
      continue;
    }
    s.participant_id = f[0];
    s.construct = *c;
    s.format = *fmt;
    s.axis_name = f[4];
    s.representation = *rep;
    out.push_back(std::move(s));
  }
  if (!issues.empty()) detail::fail_with(issues);
  return out;
}

inline std::vector<ScoreRecord> load_scores(const std::filesystem::path& path) {
  return parse_scores(detail::read_text_file(path), path.string());
}

// ---------------------------------------------------------------- sentiment

inline constexpr std::string_view kSentimentHeader =
    "participant_id,time_point,construct,format,compound,distress,neg,neu,pos";

inline std::string format_sentiment(std::vector<SentimentRecord> records) {
  std::sort(records.begin(), records.end(), [](const SentimentRecord& a, const SentimentRecord& b) {
    return std::make_tuple(std::cref(a.participant_id), a.time_point, to_string(a.construct), to_string(a.format)) <
           std::make_tuple(std::cref(b.participant_id), b.time_point, to_string(b.construct), to_string(b.format));
  });
  std::string out = std::string(kSentimentHeader) + "\n";
  for (const auto& r : records) {
    out += csv::format_row({r.participant_id, std::to_string(r.time_point), std::string(to_string(r.construct)),
                            std::string(to_string(r.format)), format_real(r.compound), format_real(r.distress),
                            format_real(r.neg), format_real(r.neu), format_real(r.pos)});
  }
  return out;
}

inline void write_sentiment(const std::vector<SentimentRecord>& records, const std::filesystem::path& path) {
  write_file_atomic(path, format_sentiment(records));
}

inline std::vector<SentimentRecord> parse_sentiment(std::string_view content, const std::string& source) {
  const auto rows = csv::parse(content, source);
  if (rows.empty()) throw Error(ErrorCode::kParseError, source + ": empty file");
  std::vector<detail::Issue> issues;
  std::vector<SentimentRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    const std::string where = source + ":" + std::to_string(rows[r].line);
    SentimentRecord s;
    const auto c = f.size() == 9 ? parse_construct(f[2]) : std::nullopt;
    const auto fmt = f.size() == 9 ? parse_format(f[3]) : std::nullopt;
    if (f.size() != 9 || !c || !fmt || !detail::parse_int(f[1], s.time_point) ||
        !detail::parse_double(f[4], s.compound) || !detail::parse_double(f[5], s.distress) ||
        !detail::parse_double(f[6], s.neg) || !detail::parse_double(f[7], s.neu) ||
        !detail::parse_double(f[8], s.pos)) {
      issues.push_back({ErrorCode::kParseError, where + ": malformed sentiment row"});
      continue;
    }
    s.participant_id = f[0];
    s.construct = *c;
    s.format = *fmt;
    out.push_back(std::move(s));
  }
  if (!issues.empty()) detail::fail_with(issues);
  return out;
}

inline std::vector<SentimentRecord> load_sentiment(const std::filesystem::path& path) {
  return parse_sentiment(detail::read_text_file(path), path.string());
}

}  // namespace semproj
