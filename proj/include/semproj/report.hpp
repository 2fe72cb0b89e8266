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

// Report assembly from evaluation outputs: report.json (stable field order),
// report.md and plot-ready CSV files.
//
// report.json layout:
//   metadata       generated_at (the only non-reproducible field), model_id,
//                  seed, time_point, config, exclusions, clamped cells
//   correlations   one table per construct
//   reliability    format rows x all axes
//   sensitivity    one table per construct
//   distributions  one table per construct, with the top formats
//   baseline       one table per construct

#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semproj/csv.hpp"
#include "semproj/datastore.hpp"

namespace semproj {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// UTC time, or SOURCE_DATE_EPOCH when set, as ISO 8601.
inline std::string report_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) t = std::strtoll(epoch, nullptr, 10);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace report_detail {

using Json = nlohmann::ordered_json;

inline std::string fixed(const Json& v, int digits = 2) {
  if (v.is_null()) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v.get<double>());
  return buf;
}

inline std::string real_or_empty(const Json& v) { return v.is_null() ? "" : format_real(v.get<double>()); }

inline std::string str(const Json& v) { return v.get<std::string>(); }

inline std::string na_text(const Json& reason) {
  return reason.is_null() ? "NA" : "NA (" + reason.get<std::string>() + ")";
}

inline std::string star_text(const Json& stars) {
  const auto s = stars.get<std::string>();
  return s == "ns" ? "" : s;
}

struct Header {
  std::string first;
  std::vector<std::string> columns;
};

inline std::string table(const Header& h, const std::vector<std::vector<std::string>>& rows) {
  std::string out = "| " + h.first;
  for (const auto& c : h.columns) out += " | " + c;
  out += " |\n|---";
  for (std::size_t i = 0; i < h.columns.size(); ++i) out += "|---:";
  out += "|\n";
  for (const auto& r : rows) {
    out += "|";
    for (const auto& cell : r) out += " " + cell + " |";
    out += "\n";
  }
  return out;
}

/// Columns "AXIS SCALE" in the cell order shared by every row.
inline std::vector<std::string> cell_columns(const Json& rows) {
  std::vector<std::string> out;
  if (rows.empty()) return out;
  for (const auto& c : rows.front().at("cells")) {
    out.push_back(c.at("axis").get<std::string>() + " " + c.at("scale").get<std::string>());
  }
  return out;
}

}  // namespace report_detail

/// Combines the evaluation outputs with run metadata and derives the
/// exclusion and clamp summaries.
inline nlohmann::ordered_json assemble_report(nlohmann::ordered_json metadata, const nlohmann::ordered_json& correlations,
                                              const nlohmann::ordered_json& reliability,
                                              const nlohmann::ordered_json& sensitivity,
                                              const nlohmann::ordered_json& distributions,
                                              const nlohmann::ordered_json& baseline) {
  using report_detail::Json;
  Json exclusions = Json::array();
  for (const auto& row : reliability.at("rows")) {
    for (const auto& c : row.at("cells")) {
      if (c.at("excluded").get<std::size_t>() == 0) continue;
      exclusions.push_back({{"row", row.at("row")}, {"axis", c.at("axis")}, {"excluded", c.at("excluded")}});
    }
  }
  Json clamped = Json::array();
  for (const auto& table : sensitivity) {
    for (const auto& row : table.at("rows")) {
      for (const auto& c : row.at("cells")) {
        for (const char* kind : {"partial", "full"}) {
          if (!c.at(std::string(kind) + "_clamped").get<bool>()) continue;
          clamped.push_back({{"construct", table.at("construct")}, {"row", row.at("row")}, {"axis", c.at("axis")},
                             {"scale", c.at("scale")}, {"correction", kind}});
        }
      }
    }
  }
  metadata["split_half_exclusions"] = std::move(exclusions);
  metadata["clamped_cells"] = std::move(clamped);
  Json report;
  report["metadata"] = std::move(metadata);
  report["correlations"] = correlations;
  report["reliability"] = reliability;
  report["sensitivity"] = sensitivity;
  report["distributions"] = distributions;
  report["baseline"] = baseline;
  return report;
}

/// The report minus its timestamp; equal for reproducible runs.
inline std::string reproducible_dump(nlohmann::ordered_json report) {
  if (report.contains("metadata")) report["metadata"].erase("generated_at");
  return report.dump(2);
}

inline std::string render_markdown(const nlohmann::ordered_json& report) {
  using namespace report_detail;
  const Json& meta = report.at("metadata");
  std::string md = "# Semantic projection report\n\n";
  md += "- Model: `" + meta.at("model_id").get<std::string>() + "`\n";
  md += "- Seed: " + (meta.at("seed").is_null() ? std::string("none") : meta.at("seed").dump()) + "\n";
  md += "- Time points: " + meta.at("time_point").get<std::string>() + "\n";
  md += "- Generated: " + meta.at("generated_at").get<std::string>() + "\n\n";

  for (const auto& t : report.at("correlations")) {
    md += "## Validity correlations: " + t.at("construct").get<std::string>() + "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : t.at("rows")) {
      std::vector<std::string> r{row.at("row").get<std::string>()};
      for (const auto& c : row.at("cells")) {
        r.push_back(c.at("partial").is_null() ? na_text(c.at("na_reason"))
                                               : fixed(c.at("partial")) + star_text(c.at("stars")));
      }
      rows.push_back(std::move(r));
    }
    md += table({"Format", cell_columns(t.at("rows"))}, rows);
    md += "\nCells are Pearson correlations of severity with clinical totals, corrected for the reliability of "
          "the clinical scale only. Stars use the uncorrected p-value: * p < .05, ** p < .01, *** p < .001.\n\n";
  }

  {
    const Json& rel = report.at("reliability");
    md += "## Split-half reliability\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : rel.at("rows")) {
      std::vector<std::string> r{row.at("row").get<std::string>()};
      for (const auto& c : row.at("cells")) {
        r.push_back(c.at("r_sb").is_null() ? na_text(c.at("na_reason")) : fixed(c.at("r_sb")));
      }
      rows.push_back(std::move(r));
    }
    md += table({"Format", rel.at("axes").get<std::vector<std::string>>()}, rows);
    md += "\nOdd and even units are scored separately, correlated across participants and stepped up with the "
          "Spearman-Brown formula.\n\n";
  }

  for (const auto& t : report.at("sensitivity")) {
    md += "## Sensitivity to attenuation corrections: " + t.at("construct").get<std::string>() + "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : t.at("rows")) {
      std::vector<std::string> r{row.at("row").get<std::string>()};
      for (const auto& c : row.at("cells")) {
        r.push_back(c.at("raw").is_null() ? na_text(c.at("na_reason"))
                                           : fixed(c.at("raw")) + " / " + fixed(c.at("partial")) + " / " +
                                                 (c.at("full").is_null() ? na_text(c.at("full_na_reason"))
                                                                         : fixed(c.at("full"))));
      }
      rows.push_back(std::move(r));
    }
    md += table({"Format", cell_columns(t.at("rows"))}, rows);
    md += "\nEach cell shows raw / scale-corrected / scale- and split-half-corrected correlations. The doubly "
          "corrected value is an upper-bound approximation.\n\n";
  }

  for (const auto& t : report.at("distributions")) {
    md += "## Distributional similarity: " + t.at("construct").get<std::string>() + "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : t.at("rows")) {
      std::vector<std::string> r{row.at("row").get<std::string>()};
      for (const auto& c : row.at("cells")) {
        r.push_back(c.at("wd_z").is_null() ? na_text(c.at("na_reason"))
                                            : fixed(c.at("wd_z"), 3) + " (r " + fixed(c.at("raw")) + ")");
      }
      rows.push_back(std::move(r));
    }
    md += table({"Format", cell_columns(t.at("rows"))}, rows);
    md += "\nWasserstein distance between z-scored severity and z-scored clinical totals, with the raw "
          "correlation. Closest formats:\n\n";
    int rank = 1;
    for (const auto& top : t.at("top")) {
      md += std::to_string(rank++) + ". " + top.at("row").get<std::string>() + ": WD_z " + fixed(top.at("wd_z"), 3) +
            " on " + top.at("axis").get<std::string>() + " vs " + top.at("scale").get<std::string>() + "\n";
    }
    md += "\n";
  }

  for (const auto& t : report.at("baseline")) {
    md += "## Projection versus lexicon sentiment: " + t.at("construct").get<std::string>() + "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : t.at("cells")) {
      rows.push_back({c.at("format").get<std::string>(), c.at("scale").get<std::string>(),
                      c.at("projection_partial").is_null() ? "NA" : fixed(c.at("projection_partial")),
                      c.at("axis").is_null() ? "" : c.at("axis").get<std::string>() + "/" +
                                                        c.at("representation").get<std::string>(),
                      fixed(c.at("sentiment_partial")),
                      c.at("delta").is_null() ? na_text(c.at("na_reason")) : fixed(c.at("delta"))});
    }
    md += table({"Format", {"Scale", "Projection", "Selected", "Lexicon", "Delta"}}, rows);
    md += "\nDelta is the best scale-corrected projection correlation minus the scale-corrected correlation of "
          "the lexicon distress index computed on the raw text.\n\n";
  }

  const auto& clamped = meta.at("clamped_cells");
  if (!clamped.empty()) {
    md += "Corrections clamped to +-1: " + std::to_string(clamped.size()) + " cell(s); see report.json.\n";
  }
  return md;
}

/// Plot-ready long-format tables, one file per figure.
inline void write_plot_data(const nlohmann::ordered_json& report, const std::filesystem::path& dir) {
  using report_detail::real_or_empty;
  using report_detail::str;
  std::string sens = csv::format_row({"construct", "row", "axis", "scale", "raw", "partial", "full"});
  for (const auto& t : report.at("sensitivity")) {
    for (const auto& row : t.at("rows")) {
      for (const auto& c : row.at("cells")) {
        sens += csv::format_row({str(t.at("construct")), str(row.at("row")), str(c.at("axis")), str(c.at("scale")),
                                 real_or_empty(c.at("raw")), real_or_empty(c.at("partial")),
                                 real_or_empty(c.at("full"))});
      }
    }
  }
  write_file_atomic(dir / "sensitivity.csv", sens);

  std::string dist = csv::format_row({"construct", "row", "axis", "scale", "wd_z", "raw", "top_rank"});
  for (const auto& t : report.at("distributions")) {
    for (const auto& row : t.at("rows")) {
      std::string rank;
      for (std::size_t i = 0; i < t.at("top").size(); ++i) {
        if (t.at("top")[i].at("row") == row.at("row")) rank = std::to_string(i + 1);
      }
      for (const auto& c : row.at("cells")) {
        dist += csv::format_row({str(t.at("construct")), str(row.at("row")), str(c.at("axis")), str(c.at("scale")),
                                 real_or_empty(c.at("wd_z")), real_or_empty(c.at("raw")), rank});
      }
    }
  }
  write_file_atomic(dir / "distributions.csv", dist);

  std::string base = csv::format_row(
      {"construct", "format", "scale", "projection_partial", "sentiment_partial", "delta", "axis", "representation"});
  for (const auto& t : report.at("baseline")) {
    for (const auto& c : t.at("cells")) {
      base += csv::format_row({str(t.at("construct")), str(c.at("format")), str(c.at("scale")),
                               real_or_empty(c.at("projection_partial")), real_or_empty(c.at("sentiment_partial")),
                               real_or_empty(c.at("delta")), c.at("axis").is_null() ? "" : c.at("axis").get<std::string>(),
                               str(c.at("representation"))});
    }
  }
  write_file_atomic(dir / "baseline_delta.csv", base);
}

/// Writes report.json, report.md and plots/ under `dir`.
inline void write_report(const nlohmann::ordered_json& report, const std::filesystem::path& dir) {
  write_file_atomic(dir / "report.json", report.dump(2) + "\n");
  write_file_atomic(dir / "report.md", render_markdown(report));
  write_plot_data(report, dir / "plots");
}

}  // namespace semproj
