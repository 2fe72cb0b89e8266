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

// Report tables over severity scores: validity correlations, split-half
// reliability, attenuation sensitivity, distributional similarity and the
// lexicon baseline comparison.
//
// Every statistic pairs observations by (participant_id, time_point) in key
// order, so tables do not depend on input order. A cell that cannot be
// computed is NA with a reason; NA never turns into 0.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semproj/axes.hpp"
#include "semproj/datastore.hpp"
#include "semproj/embedder.hpp"
#include "semproj/projection.hpp"
#include "semproj/psychometrics.hpp"
#include "semproj/segmentation.hpp"
#include "semproj/types.hpp"

namespace semproj {

enum class NaReason { kUndefinedReliability, kZeroVariance, kTooFewObservations };

inline std::string_view to_string(NaReason r) {
  switch (r) {
    case NaReason::kUndefinedReliability: return "undefined_reliability";
    case NaReason::kZeroVariance: return "zero_variance";
    case NaReason::kTooFewObservations: return "too_few_observations";
  }
  return "";
}

inline std::optional<NaReason> parse_na_reason(std::string_view s) {
  for (NaReason r : {NaReason::kUndefinedReliability, NaReason::kZeroVariance, NaReason::kTooFewObservations}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

using ObservationKey = std::pair<std::string, int>;  // (participant_id, time_point)
using Reliabilities = std::map<Scale, double>;

namespace eval_detail {

inline nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json opt(const std::optional<NaReason>& r) {
  return r ? nlohmann::ordered_json(to_string(*r)) : nlohmann::ordered_json(nullptr);
}

/// Maps psychometric failures to NA reasons; anything else propagates.
template <class F>
std::optional<NaReason> na_from(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kZeroVariance: return NaReason::kZeroVariance;
      case ErrorCode::kTooFewObservations:
      case ErrorCode::kEmptySeries: return NaReason::kTooFewObservations;
      case ErrorCode::kUndefinedReliability: return NaReason::kUndefinedReliability;
      default: throw;
    }
  }
  return std::nullopt;
}

inline double reliability_for(const Reliabilities& rel, Scale s) {
  auto it = rel.find(s);
  if (it == rel.end()) {
    throw Error(ErrorCode::kInvalidConfig, "missing scale reliabilities: " + std::string(to_string(s)));
  }
  return it->second;
}

}  // namespace eval_detail

/// Severity scores indexed by (construct, format row, axis) then observation.
class ScoreIndex {
 public:
  ScoreIndex(const std::vector<ScoreRecord>& scores, TimePointFilter filter) {
    for (const auto& s : scores) {
      if (!accepts(filter, s.time_point)) continue;
      auto& series = series_[{s.construct, s.format, s.representation, s.axis_name}];
      if (!series.emplace(ObservationKey{s.participant_id, s.time_point}, s.severity).second) {
        throw Error(ErrorCode::kDuplicateKey, "score for (" + s.participant_id + ", " + std::to_string(s.time_point) +
                                                  ", " + std::string(to_string(s.format)) + ", " + s.axis_name +
                                                  ", " + std::string(to_string(s.representation)) + ")");
      }
      axes_[s.construct].insert(s.axis_name);
    }
  }

  const std::map<ObservationKey, double>* find(Construct c, const FormatRow& row, const std::string& axis) const {
    auto it = series_.find({c, row.format, row.representation, axis});
    return it == series_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> axes(Construct c) const {
    auto it = axes_.find(c);
    return it == axes_.end() ? std::vector<std::string>{} : std::vector<std::string>(it->second.begin(), it->second.end());
  }

  std::vector<ObservationKey> keys() const {
    std::set<ObservationKey> out;
    for (const auto& [k, series] : series_) {
      for (const auto& [key, v] : series) out.insert(key);
    }
    return {out.begin(), out.end()};
  }

 private:
  std::map<std::tuple<Construct, ResponseFormat, Representation, std::string>, std::map<ObservationKey, double>> series_;
  std::map<Construct, std::set<std::string>> axes_;
};

class ClinicalIndex {
 public:
  explicit ClinicalIndex(const std::vector<ClinicalRecord>& records) {
    for (const auto& r : records) by_key_.emplace(ObservationKey{r.participant_id, r.time_point}, r);
  }

  const ClinicalRecord* find(const ObservationKey& k) const {
    auto it = by_key_.find(k);
    return it == by_key_.end() ? nullptr : &it->second;
  }

  /// Throws DanglingReference listing every scored observation without a
  /// clinical record.
  void require_all(const std::vector<ObservationKey>& keys) const {
    std::string missing;
    for (const auto& k : keys) {
      if (!find(k)) missing += " (" + k.first + ", " + std::to_string(k.second) + ")";
    }
    if (!missing.empty()) throw Error(ErrorCode::kDanglingReference, "scores without clinical records:" + missing);
  }

 private:
  std::map<ObservationKey, ClinicalRecord> by_key_;
};

struct PairedSeries {
  std::vector<ObservationKey> keys;
  std::vector<double> x;  // severity
  std::vector<double> y;  // clinical total
};

inline PairedSeries pair_with_clinical(const std::map<ObservationKey, double>* series, const ClinicalIndex& clinical,
                                       Scale scale) {
  PairedSeries out;
  if (!series) return out;
  for (const auto& [key, severity] : *series) {
    const ClinicalRecord* rec = clinical.find(key);
    if (!rec) continue;
    out.keys.push_back(key);
    out.x.push_back(severity);
    out.y.push_back(static_cast<double>(rec->total(scale)));
  }
  return out;
}

// ---------------------------------------------------------------- correlations

struct CorrelationCell {
  std::string axis;
  Scale scale = Scale::kPHQ9;
  std::size_t n = 0;
  std::optional<double> raw;
  std::optional<double> partial;
  std::optional<double> p;
  Stars stars = Stars::kNone;
  bool clamped = false;
  std::optional<NaReason> na;

  nlohmann::ordered_json to_json() const {
    return {{"axis", axis},          {"scale", to_string(scale)},      {"n", n},
            {"raw", eval_detail::opt(raw)}, {"partial", eval_detail::opt(partial)}, {"p", eval_detail::opt(p)},
            {"stars", to_string(stars)}, {"clamped", clamped},         {"na_reason", eval_detail::opt(na)}};
  }
};

inline CorrelationCell correlate_cell(const PairedSeries& s, std::string axis, Scale scale, double r_scale) {
  CorrelationCell cell;
  cell.axis = std::move(axis);
  cell.scale = scale;
  cell.n = s.x.size();
  cell.na = eval_detail::na_from([&] {
    const auto c = pearson(s.x, s.y);
    const auto corrected = partial_disattenuate(c.r, r_scale);
    cell.raw = c.r;
    cell.p = c.p;
    cell.stars = c.stars;
    cell.partial = corrected.value;
    cell.clamped = corrected.clamped;
  });
  return cell;
}

struct CorrelationRow {
  FormatRow row;
  std::vector<CorrelationCell> cells;  // axis-major, then scale
};

struct CorrelationTable {
  Construct construct = Construct::kDepression;
  std::vector<std::string> axes;
  std::array<Scale, 2> scales{};
  std::vector<CorrelationRow> rows;

  const CorrelationCell& cell(const FormatRow& row, const std::string& axis, Scale scale) const {
    for (const auto& r : rows) {
      if (!(r.row == row)) continue;
      for (const auto& c : r.cells) {
        if (c.axis == axis && c.scale == scale) return c;
      }
    }
    throw Error(ErrorCode::kInvalidInput, "no cell " + row.name() + "/" + axis + "/" + std::string(to_string(scale)));
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["construct"] = to_string(construct);
    j["axes"] = axes;
    j["scales"] = {to_string(scales[0]), to_string(scales[1])};
    nlohmann::ordered_json rs = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json cells = nlohmann::ordered_json::array();
      for (const auto& c : r.cells) cells.push_back(c.to_json());
      rs.push_back({{"row", r.row.name()}, {"cells", std::move(cells)}});
    }
    j["rows"] = std::move(rs);
    return j;
  }
};

/// Partially disattenuated validity correlations; stars come from the raw
/// correlation's p-value.
inline CorrelationTable correlation_table(const std::vector<ScoreRecord>& scores,
                                          const std::vector<ClinicalRecord>& clinical,
                                          const Reliabilities& reliabilities, Construct construct,
                                          TimePointFilter filter = TimePointFilter::kPooled) {
  const ScoreIndex index(scores, filter);
  const ClinicalIndex clin(clinical);
  clin.require_all(index.keys());
  CorrelationTable table;
  table.construct = construct;
  table.axes = index.axes(construct);
  table.scales = scales_for(construct);
  for (Scale s : table.scales) eval_detail::reliability_for(reliabilities, s);
  for (const auto& row : report_rows()) {
    CorrelationRow out{row, {}};
    for (const auto& axis : table.axes) {
      for (Scale s : table.scales) {
        out.cells.push_back(correlate_cell(pair_with_clinical(index.find(construct, row, axis), clin, s), axis, s,
                                           reliabilities.at(s)));
      }
    }
    table.rows.push_back(std::move(out));
  }
  return table;
}

// ---------------------------------------------------------------- reliability

struct ReliabilityCell {
  std::string axis;
  Construct construct = Construct::kDepression;
  std::optional<double> r_half;
  std::optional<double> r_sb;
  std::size_t n_pairs = 0;
  std::size_t excluded = 0;
  std::optional<NaReason> na;

  nlohmann::ordered_json to_json() const {
    return {{"axis", axis},       {"construct", to_string(construct)}, {"r_half", eval_detail::opt(r_half)},
            {"r_sb", eval_detail::opt(r_sb)}, {"n_pairs", n_pairs}, {"excluded", excluded},
            {"na_reason", eval_detail::opt(na)}};
  }
};

struct ReliabilityRow {
  FormatRow row;
  std::vector<ReliabilityCell> cells;  // one per axis
};

struct ReliabilityTable {
  std::vector<std::string> axes;
  std::vector<ReliabilityRow> rows;

  const ReliabilityCell* find(const FormatRow& row, const std::string& axis) const {
    for (const auto& r : rows) {
      if (!(r.row == row)) continue;
      for (const auto& c : r.cells) {
        if (c.axis == axis) return &c;
      }
    }
    return nullptr;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["axes"] = axes;
    nlohmann::ordered_json rs = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json cells = nlohmann::ordered_json::array();
      for (const auto& c : r.cells) cells.push_back(c.to_json());
      rs.push_back({{"row", r.row.name()}, {"cells", std::move(cells)}});
    }
    j["rows"] = std::move(rs);
    return j;
  }

  static ReliabilityTable from_json(const nlohmann::json& j) {
    ReliabilityTable t;
    try {
      t.axes = j.at("axes").get<std::vector<std::string>>();
      for (const auto& r : j.at("rows")) {
        const auto name = r.at("row").get<std::string>();
        auto row = std::find_if(report_rows().begin(), report_rows().end(),
                                [&](const FormatRow& fr) { return fr.name() == name; });
        if (row == report_rows().end()) throw Error(ErrorCode::kParseError, "unknown report row '" + name + "'");
        ReliabilityRow out{*row, {}};
        for (const auto& c : r.at("cells")) {
          ReliabilityCell cell;
          cell.axis = c.at("axis").get<std::string>();
          cell.construct = require(parse_construct(c.at("construct").get<std::string>()), "construct",
                                   c.at("construct").get<std::string>());
          if (!c.at("r_half").is_null()) cell.r_half = c.at("r_half").get<double>();
          if (!c.at("r_sb").is_null()) cell.r_sb = c.at("r_sb").get<double>();
          cell.n_pairs = c.at("n_pairs").get<std::size_t>();
          cell.excluded = c.at("excluded").get<std::size_t>();
          if (!c.at("na_reason").is_null()) {
            const auto reason = c.at("na_reason").get<std::string>();
            cell.na = require(parse_na_reason(reason), "NA reason", reason);
          }
          out.cells.push_back(std::move(cell));
        }
        t.rows.push_back(std::move(out));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, std::string("reliability table: ") + e.what());
    }
    return t;
  }
};

/// Every text the scoring and reliability steps embed, in first-use order:
/// whole responses, sentence units of free text, and both joined halves.
inline std::vector<std::string> texts_to_embed(const std::vector<SegmentedResponse>& responses) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](const std::string& t) {
    if (seen.insert(t).second) out.push_back(t);
  };
  for (const auto& r : responses) {
    add(r.source.text);
    if (r.source.format == ResponseFormat::kWriteText) {
      for (const auto& u : r.units) add(u);
    }
    if (r.k() >= 2) {
      const auto [a, b] = odd_even_split(r.units);
      add(join_units(a, r.source.format));
      add(join_units(b, r.source.format));
    }
  }
  return out;
}

/// Split-half reliability per format row and axis. Whole rows score each
/// joined half as one text; unit rows re-aggregate each half's own sentence
/// scores with the row's representation. Responses with fewer than two units
/// are excluded and counted.
inline ReliabilityTable reliability_table(const std::vector<SegmentedResponse>& responses, const AxisRegistry& axes,
                                          TextEmbedder& embedder, TimePointFilter filter = TimePointFilter::kPooled) {
  std::vector<SegmentedResponse> selected;
  for (const auto& r : responses) {
    if (accepts(filter, r.source.time_point)) selected.push_back(r);
  }
  for (const SemanticAxis* a : axes.all()) detail::require_model(embedder, *a);
  const auto vectors = embed_unique(embedder, texts_to_embed(selected));

  // Observation order makes the result independent of input order.
  std::sort(selected.begin(), selected.end(), [](const SegmentedResponse& a, const SegmentedResponse& b) {
    return std::tie(a.source.participant_id, a.source.time_point) < std::tie(b.source.participant_id, b.source.time_point);
  });

  ReliabilityTable table;
  std::vector<const SemanticAxis*> ordered;
  for (Construct c : kAllConstructs) {
    for (const SemanticAxis* a : axes.for_construct(c)) ordered.push_back(a);
  }
  for (const SemanticAxis* a : ordered) table.axes.push_back(a->name);

  for (const auto& row : report_rows()) {
    ReliabilityRow out{row, {}};
    for (const SemanticAxis* axis : ordered) {
      ReliabilityCell cell;
      cell.axis = axis->name;
      cell.construct = axis->construct;
      std::vector<std::pair<double, double>> pairs;
      for (const auto& r : selected) {
        if (r.source.construct != axis->construct || r.source.format != row.format) continue;
        if (r.k() < 2) {
          ++cell.excluded;
          continue;
        }
        const auto [a, b] = odd_even_split(r.units);
        auto half_score = [&](const std::vector<std::string>& half) {
          if (row.representation == Representation::kWhole) {
            return project(vectors.at(join_units(half, row.format)), *axis);
          }
          std::vector<double> unit_scores;
          for (const auto& u : half) unit_scores.push_back(project(vectors.at(u), *axis));
          return row.representation == Representation::kUnitMean ? mean_score(unit_scores) : maxabs_score(unit_scores);
        };
        pairs.emplace_back(half_score(a), half_score(b));
      }
      cell.n_pairs = pairs.size();
      cell.na = eval_detail::na_from([&] {
        const auto est = split_half_reliability(pairs, cell.excluded);
        cell.r_half = est.r_half;
        cell.r_sb = est.r_sb;
        if (!cell.r_sb) throw Error(ErrorCode::kUndefinedReliability, "non-positive half correlation");
      });
      out.cells.push_back(std::move(cell));
    }
    table.rows.push_back(std::move(out));
  }
  return table;
}

// ---------------------------------------------------------------- sensitivity

struct SensitivityCell {
  std::string axis;
  Scale scale = Scale::kPHQ9;
  std::optional<double> raw;
  std::optional<double> partial;
  std::optional<double> full;
  std::optional<double> r_sb;
  bool partial_clamped = false;
  bool full_clamped = false;
  std::optional<NaReason> na;       // of the raw correlation
  std::optional<NaReason> full_na;  // of the full correction

  nlohmann::ordered_json to_json() const {
    return {{"axis", axis},
            {"scale", to_string(scale)},
            {"raw", eval_detail::opt(raw)},
            {"partial", eval_detail::opt(partial)},
            {"full", eval_detail::opt(full)},
            {"r_sb", eval_detail::opt(r_sb)},
            {"partial_clamped", partial_clamped},
            {"full_clamped", full_clamped},
            {"na_reason", eval_detail::opt(na)},
            {"full_na_reason", eval_detail::opt(full_na)}};
  }
};

struct SensitivityRow {
  FormatRow row;
  std::vector<SensitivityCell> cells;
};

struct SensitivityTable {
  Construct construct = Construct::kDepression;
  std::vector<SensitivityRow> rows;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["construct"] = to_string(construct);
    nlohmann::ordered_json rs = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json cells = nlohmann::ordered_json::array();
      for (const auto& c : r.cells) cells.push_back(c.to_json());
      rs.push_back({{"row", r.row.name()}, {"cells", std::move(cells)}});
    }
    j["rows"] = std::move(rs);
    return j;
  }
};

/// Raw, scale-corrected and doubly corrected correlation per cell. The
/// double correction uses the cell's own split-half reliability.
inline SensitivityTable sensitivity_analysis(const CorrelationTable& correlations, const ReliabilityTable& reliability,
                                             const Reliabilities& reliabilities) {
  SensitivityTable table;
  table.construct = correlations.construct;
  for (const auto& row : correlations.rows) {
    SensitivityRow out{row.row, {}};
    for (const auto& c : row.cells) {
      SensitivityCell cell;
      cell.axis = c.axis;
      cell.scale = c.scale;
      cell.raw = c.raw;
      cell.partial = c.partial;
      cell.partial_clamped = c.clamped;
      cell.na = c.na;
      const ReliabilityCell* rel = reliability.find(row.row, c.axis);
      if (rel) cell.r_sb = rel->r_sb;
      if (!c.raw) {
        cell.full_na = c.na;
      } else if (!cell.r_sb) {
        cell.full_na = rel && rel->na ? rel->na : std::optional<NaReason>(NaReason::kUndefinedReliability);
      } else {
        const auto full = full_disattenuate(*c.raw, cell.r_sb, eval_detail::reliability_for(reliabilities, c.scale));
        cell.full = full.value;
        cell.full_clamped = full.clamped;
      }
      out.cells.push_back(std::move(cell));
    }
    table.rows.push_back(std::move(out));
  }
  return table;
}

// ---------------------------------------------------------------- distributions

struct DistributionCell {
  std::string axis;
  Scale scale = Scale::kPHQ9;
  std::size_t n = 0;
  std::optional<double> wd_z;
  std::optional<double> raw;
  std::optional<NaReason> na;

  nlohmann::ordered_json to_json() const {
    return {{"axis", axis}, {"scale", to_string(scale)}, {"n", n}, {"wd_z", eval_detail::opt(wd_z)},
            {"raw", eval_detail::opt(raw)}, {"na_reason", eval_detail::opt(na)}};
  }
};

struct DistributionRow {
  FormatRow row;
  std::vector<DistributionCell> cells;
};

/// A format row's closest cell; rows are ranked by it.
struct TopFormat {
  FormatRow row;
  std::string axis;
  Scale scale = Scale::kPHQ9;
  double wd_z = 0.0;
  double raw = 0.0;
};

struct DistributionTable {
  Construct construct = Construct::kDepression;
  std::vector<DistributionRow> rows;
  std::vector<TopFormat> top;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["construct"] = to_string(construct);
    nlohmann::ordered_json rs = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json cells = nlohmann::ordered_json::array();
      for (const auto& c : r.cells) cells.push_back(c.to_json());
      rs.push_back({{"row", r.row.name()}, {"cells", std::move(cells)}});
    }
    j["rows"] = std::move(rs);
    nlohmann::ordered_json top_json = nlohmann::ordered_json::array();
    for (const auto& t : top) {
      top_json.push_back({{"row", t.row.name()}, {"axis", t.axis}, {"scale", to_string(t.scale)},
                          {"wd_z", t.wd_z}, {"raw", t.raw}});
    }
    j["top"] = std::move(top_json);
    return j;
  }
};

/// Rows ordered by their lowest defined WD_z; ties go to the row name that
/// sorts first. Rows without any defined cell are not ranked.
inline std::vector<TopFormat> select_top_formats(const std::vector<DistributionRow>& rows, std::size_t k) {
  std::vector<TopFormat> ranked;
  for (const auto& r : rows) {
    std::optional<TopFormat> best;
    for (const auto& c : r.cells) {
      if (!c.wd_z) continue;
      if (!best || *c.wd_z < best->wd_z) best = TopFormat{r.row, c.axis, c.scale, *c.wd_z, c.raw.value_or(0.0)};
    }
    if (best) ranked.push_back(*best);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const TopFormat& a, const TopFormat& b) {
    if (a.wd_z != b.wd_z) return a.wd_z < b.wd_z;
    return a.row.name() < b.row.name();
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

inline DistributionTable distribution_similarity(const std::vector<ScoreRecord>& scores,
                                                 const std::vector<ClinicalRecord>& clinical, Construct construct,
                                                 TimePointFilter filter = TimePointFilter::kPooled,
                                                 std::size_t top_k = 4) {
  const ScoreIndex index(scores, filter);
  const ClinicalIndex clin(clinical);
  clin.require_all(index.keys());
  DistributionTable table;
  table.construct = construct;
  for (const auto& row : report_rows()) {
    DistributionRow out{row, {}};
    for (const auto& axis : index.axes(construct)) {
      for (Scale s : scales_for(construct)) {
        const auto paired = pair_with_clinical(index.find(construct, row, axis), clin, s);
        DistributionCell cell;
        cell.axis = axis;
        cell.scale = s;
        cell.n = paired.x.size();
        cell.na = eval_detail::na_from([&] {
          const auto c = pearson(paired.x, paired.y);
          cell.wd_z = wasserstein_z(paired.x, paired.y);
          cell.raw = c.r;
        });
        out.cells.push_back(std::move(cell));
      }
    }
    table.rows.push_back(std::move(out));
  }
  table.top = select_top_formats(table.rows, top_k);
  return table;
}

// ---------------------------------------------------------------- baseline

struct BaselineCell {
  ResponseFormat format = ResponseFormat::kSelectWords;
  Scale scale = Scale::kPHQ9;
  std::size_t n = 0;
  std::optional<double> projection_partial;
  std::string axis;
  Representation representation = Representation::kWhole;
  std::optional<double> sentiment_partial;
  std::optional<double> delta;
  std::optional<NaReason> na;

  nlohmann::ordered_json to_json() const {
    return {{"format", to_string(format)},
            {"scale", to_string(scale)},
            {"n", n},
            {"projection_partial", eval_detail::opt(projection_partial)},
            {"axis", axis.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(axis)},
            {"representation", to_string(representation)},
            {"sentiment_partial", eval_detail::opt(sentiment_partial)},
            {"delta", eval_detail::opt(delta)},
            {"na_reason", eval_detail::opt(na)}};
  }
};

struct BaselineTable {
  Construct construct = Construct::kDepression;
  std::vector<BaselineCell> cells;  // format-major, then scale

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : cells) cs.push_back(c.to_json());
    return {{"construct", to_string(construct)}, {"cells", std::move(cs)}};
  }
};

/// Delta = best projection partial r minus the lexicon distress partial r.
/// The projection side maximizes over axes and, for free text, over all three
/// representations; the lexicon side always uses the raw text. Both sides use
/// the observations they have in common.
inline BaselineTable baseline_delta(const std::vector<ScoreRecord>& scores,
                                    const std::vector<SentimentRecord>& sentiment,
                                    const std::vector<ClinicalRecord>& clinical, const Reliabilities& reliabilities,
                                    Construct construct, TimePointFilter filter = TimePointFilter::kPooled) {
  const ScoreIndex index(scores, filter);
  const ClinicalIndex clin(clinical);
  clin.require_all(index.keys());
  std::map<ResponseFormat, std::map<ObservationKey, double>> distress;
  for (const auto& s : sentiment) {
    if (s.construct != construct || !accepts(filter, s.time_point)) continue;
    distress[s.format].emplace(ObservationKey{s.participant_id, s.time_point}, s.distress);
  }

  BaselineTable table;
  table.construct = construct;
  const auto axes = index.axes(construct);
  for (ResponseFormat f : kAllFormats) {
    std::vector<FormatRow> rows{{f, Representation::kWhole}};
    if (f == ResponseFormat::kWriteText) {
      rows.push_back({f, Representation::kUnitMean});
      rows.push_back({f, Representation::kUnitMaxAbs});
    }
    // Observations present for the lexicon and every scored candidate.
    std::set<ObservationKey> common;
    for (const auto& [k, v] : distress[f]) {
      if (clin.find(k)) common.insert(k);
    }
    for (const auto& row : rows) {
      for (const auto& axis : axes) {
        const auto* series = index.find(construct, row, axis);
        if (!series) continue;
        std::set<ObservationKey> kept;
        for (const auto& k : common) {
          if (series->count(k)) kept.insert(k);
        }
        common = std::move(kept);
      }
    }
    auto restrict = [&](const std::map<ObservationKey, double>* series) {
      std::map<ObservationKey, double> out;
      if (!series) return out;
      for (const auto& k : common) out.emplace(k, series->at(k));
      return out;
    };
    for (Scale s : scales_for(construct)) {
      const double r_scale = eval_detail::reliability_for(reliabilities, s);
      BaselineCell cell;
      cell.format = f;
      cell.scale = s;
      cell.n = common.size();
      for (const auto& row : rows) {
        for (const auto& axis : axes) {
          const auto series = restrict(index.find(construct, row, axis));
          const auto c = correlate_cell(pair_with_clinical(&series, clin, s), axis, s, r_scale);
          if (c.partial && (!cell.projection_partial || *c.partial > *cell.projection_partial)) {
            cell.projection_partial = c.partial;
            cell.axis = axis;
            cell.representation = row.representation;
          }
          if (!cell.projection_partial && c.na && !cell.na) cell.na = c.na;
        }
      }
      const auto lexicon = restrict(&distress[f]);
      const auto lex = correlate_cell(pair_with_clinical(&lexicon, clin, s), "lexicon", s, r_scale);
      cell.sentiment_partial = lex.partial;
      if (cell.projection_partial && cell.sentiment_partial) {
        cell.delta = *cell.projection_partial - *cell.sentiment_partial;
        cell.na.reset();
      } else {
        cell.na = !cell.projection_partial ? cell.na.value_or(NaReason::kTooFewObservations)
                                           : lex.na.value_or(NaReason::kTooFewObservations);
      }
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace semproj
