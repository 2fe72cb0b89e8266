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

// Command-line front end. All logic sits behind run() so tests can drive it
// in-process; exit codes are 0 on success, 1 for validation failures (bad
// config, bad input files, usage errors) and 2 for runtime failures.

#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semproj/config.hpp"
#include "semproj/datastore.hpp"
#include "semproj/embedding_cache.hpp"
#include "semproj/embedding_provider.hpp"
#include "semproj/evaluation.hpp"
#include "semproj/pipeline.hpp"
#include "semproj/report.hpp"
#include "semproj/synthetic.hpp"

#ifndef SEMPROJ_DATA_DIR
#define SEMPROJ_DATA_DIR "data"
#endif

namespace semproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::string time_point;
  std::string construct;
  bool cache_only = false;
  std::optional<std::uint64_t> seed;
  bool lenient = false;
  std::size_t components = 2;
};

inline fs::path default_anchors_path() { return fs::path(SEMPROJ_DATA_DIR) / "anchors" / "default_anchors.json"; }
inline fs::path default_lexicon_dir() { return fs::path(SEMPROJ_DATA_DIR) / "sentiment"; }

inline Json read_json(const fs::path& path) {
  const std::string content = detail::read_text_file(path);
  try {
    return Json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

inline void write_json(const fs::path& path, const Json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

/// State shared by one command invocation. The config, cache and provider
/// are opened lazily so commands that do not need them never touch disk.
class Session {
 public:
  Session(Options options, std::ostream& out) : opt_(std::move(options)), out_(out), out_dir_(opt_.out_dir) {}

  const fs::path& out_dir() const { return out_dir_; }
  fs::path eval_path(const char* name) const { return out_dir_ / "eval" / (std::string(name) + ".json"); }

  /// Loads the config and applies command-line overrides; flags win.
  RunConfig& config() {
    if (config_) return *config_;
    if (opt_.config_path.empty()) throw Error(ErrorCode::kInvalidConfig, "--config is required");
    RunConfig c = load_config(opt_.config_path);
    if (!opt_.time_point.empty()) {
      c.time_point = require_flag(parse_time_point(opt_.time_point), "--time-point", opt_.time_point);
    }
    if (!opt_.construct.empty()) {
      c.construct = require_flag(parse_construct(opt_.construct), "--construct", opt_.construct);
    }
    if (opt_.cache_only) c.cache_only = true;
    if (opt_.lenient) c.lenient = true;
    if (opt_.seed) c.seed = opt_.seed;
    config_ = std::move(c);
    return *config_;
  }

  std::vector<Construct> constructs() {
    std::vector<Construct> out;
    for (Construct c : kAllConstructs) {
      if (config().includes(c)) out.push_back(c);
    }
    return out;
  }

  EmbeddingProvider& provider() {
    if (provider_) return *provider_;
    const RunConfig& c = config();
    const fs::path dir = c.cache_path.empty() ? out_dir_ / "cache" : c.resolve(c.cache_path);
    cache_.emplace(dir);
    ProviderOptions po;
    po.model_id = c.model_id;
    po.cache_only = c.cache_only;
    po.batch_size = c.batch_size;
    po.max_in_flight = c.max_in_flight;
    provider_.emplace(*cache_, po);
    if (provider_->has_service()) provider_->handshake();
    return *provider_;
  }

  void flush_cache() {
    if (cache_) cache_->flush();
  }

  std::vector<RawResponse> responses() {
    const RunConfig& c = config();
    if (c.responses_path.empty()) throw Error(ErrorCode::kInvalidConfig, "paths.responses is not set");
    LoadIssues issues;
    auto out = load_responses(c.resolve(c.responses_path), c.lenient, &issues);
    skipped_lines_ = issues.messages.size();
    for (const auto& m : issues.messages) out_ << "skipped: " << m << "\n";
    return out;
  }

  std::vector<ClinicalRecord> clinical() {
    const RunConfig& c = config();
    if (c.clinical_path.empty()) throw Error(ErrorCode::kInvalidConfig, "paths.clinical is not set");
    return load_clinical(c.resolve(c.clinical_path));
  }

  std::vector<AnchorSet> anchors() {
    const RunConfig& c = config();
    return load_anchors(c.anchors_path.empty() ? default_anchors_path() : c.resolve(c.anchors_path));
  }

  SentimentLexicon lexicon() {
    const RunConfig& c = config();
    return load_sentiment_lexicon(c.sentiment_lexicon_path.empty() ? default_lexicon_dir()
                                                                   : c.resolve(c.sentiment_lexicon_path));
  }

  /// Axes built by `axes build`; they must match the configured model.
  AxisRegistry axes() {
    const fs::path path = out_dir_ / "axes.json";
    if (!fs::exists(path)) throw Error(ErrorCode::kInvalidInput, path.string() + " not found; run 'axes build' first");
    AxisRegistry reg = AxisRegistry::from_json(read_json(path));
    for (const SemanticAxis* a : reg.all()) {
      if (a->model_id != config().model_id) {
        throw Error(ErrorCode::kModelMismatch,
                    "axis " + a->name + " uses '" + a->model_id + "', config pins '" + config().model_id + "'");
      }
    }
    return reg;
  }

  std::vector<SegmentedResponse> segmented(const std::vector<RawResponse>& responses) {
    const Segmenter segmenter(config().abbreviations);
    return segment_all(responses, segmenter, config().time_point, config().construct);
  }

  std::vector<ScoreRecord> scores() {
    const fs::path path = out_dir_ / "scores.csv";
    if (!fs::exists(path)) throw Error(ErrorCode::kInvalidInput, path.string() + " not found; run 'score' first");
    return load_scores(path);
  }

  std::size_t skipped_lines() const { return skipped_lines_; }

 private:
  template <class T>
  static T require_flag(const std::optional<T>& v, const char* flag, const std::string& given) {
    if (!v) throw Error(ErrorCode::kInvalidConfig, std::string(flag) + ": unknown value '" + given + "'");
    return *v;
  }

  Options opt_;
  std::ostream& out_;
  fs::path out_dir_;
  std::optional<RunConfig> config_;
  std::optional<EmbeddingCache> cache_;
  std::optional<EmbeddingProvider> provider_;
  std::size_t skipped_lines_ = 0;
};

// ------------------------------------------------------------------ commands

inline void cmd_axes_build(Session& s, std::ostream& out) {
  const auto sets = s.anchors();
  const AxisRegistry reg = build_axes(sets, s.provider());
  s.flush_cache();
  write_json(s.out_dir() / "axes.json", reg.to_json());
  out << "built " << reg.size() << " axes\n";
}

/// Two-component layout of every anchor embedding of the selected axes.
inline void cmd_axes_pca(Session& s, std::ostream& out, std::size_t components) {
  const auto sets = s.anchors();
  std::vector<std::string> labels, texts;
  std::vector<std::tuple<std::string, std::string, std::string>> meta;
  for (const auto& set : sets) {
    if (!s.config().includes(set.construct)) continue;
    for (const auto* pole : {&set.positive, &set.negative}) {
      const std::string side = pole == &set.positive ? "positive" : "negative";
      for (const auto& t : *pole) {
        texts.push_back(t);
        meta.emplace_back(set.axis_name, side, t);
      }
    }
  }
  const auto vectors = s.provider().embed_texts(texts);
  s.flush_cache();
  std::vector<std::pair<std::string, Embedding>> points;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    points.emplace_back(std::get<0>(meta[i]) + "/" + std::get<1>(meta[i]) + "/" + texts[i], vectors[i]);
  }
  const PcaLayout layout = pca_layout(points, components);

  std::vector<std::string> header{"axis", "pole", "text"};
  for (std::size_t k = 0; k < components; ++k) header.push_back("pc" + std::to_string(k + 1));
  std::string csv_out = csv::format_row(header);
  for (std::size_t i = 0; i < layout.points.size(); ++i) {
    std::vector<std::string> row{std::get<0>(meta[i]), std::get<1>(meta[i]), std::get<2>(meta[i])};
    for (double v : layout.points[i].second) row.push_back(format_real(v));
    csv_out += csv::format_row(row);
  }
  write_file_atomic(s.out_dir() / "axes_pca.csv", csv_out);
  write_json(s.out_dir() / "axes_pca.json", {{"explained_variance_ratio", layout.explained_variance_ratio},
                                            {"component_variance", layout.component_variance}});
  out << "projected " << layout.points.size() << " anchors onto " << components << " components\n";
}

/// Warms the cache with every text later commands will embed.
inline void cmd_embed(Session& s, std::ostream& out) {
  std::vector<std::string> texts;
  for (const auto& set : s.anchors()) {
    texts.insert(texts.end(), set.positive.begin(), set.positive.end());
    texts.insert(texts.end(), set.negative.begin(), set.negative.end());
  }
  const auto responses = s.responses();
  const auto extra = texts_to_embed(s.segmented(responses));
  texts.insert(texts.end(), extra.begin(), extra.end());
  auto& provider = s.provider();
  const auto before = provider.stats();
  embed_unique(provider, texts);
  s.flush_cache();
  const auto after = provider.stats();
  out << "embedded " << texts.size() << " texts (" << (after.texts_sent - before.texts_sent) << " fetched, "
      << (after.requests - before.requests) << " requests)\n";
}

inline void cmd_score(Session& s, std::ostream& out) {
  const auto responses = s.responses();
  const AxisRegistry axes = s.axes();
  const auto segmented = s.segmented(responses);
  const auto scores = score_all(segmented, axes, s.provider());
  s.flush_cache();
  write_scores(scores, s.out_dir() / "scores.csv");

  const SentimentLexicon lexicon = s.lexicon();
  const auto sentiment = score_sentiment(responses, lexicon, s.config().time_point, s.config().construct);
  write_sentiment(sentiment, s.out_dir() / "sentiment.csv");
  write_json(s.out_dir() / "score_summary.json", {{"responses", segmented.size()},
                                                  {"score_records", scores.size()},
                                                  {"skipped_lines", s.skipped_lines()},
                                                  {"sentiment_lexicon", lexicon.id}});
  out << "scored " << segmented.size() << " responses into " << scores.size() << " records\n";
}

inline std::vector<CorrelationTable> correlations(Session& s) {
  const auto scores = s.scores();
  const auto clinical = s.clinical();
  std::vector<CorrelationTable> out;
  for (Construct c : s.constructs()) {
    out.push_back(correlation_table(scores, clinical, s.config().reliabilities, c, s.config().time_point));
  }
  return out;
}

inline void cmd_eval_correlations(Session& s, std::ostream& out) {
  s.config().require_reliabilities();
  Json arr = Json::array();
  for (const auto& t : correlations(s)) arr.push_back(t.to_json());
  write_json(s.eval_path("correlations"), arr);
  out << "wrote " << s.eval_path("correlations").string() << "\n";
}

inline void cmd_eval_reliability(Session& s, std::ostream& out) {
  const auto responses = s.responses();
  const AxisRegistry axes = s.axes();
  const auto table = reliability_table(s.segmented(responses), axes, s.provider(), s.config().time_point);
  s.flush_cache();
  write_json(s.eval_path("reliability"), table.to_json());
  out << "wrote " << s.eval_path("reliability").string() << "\n";
}

inline void cmd_eval_sensitivity(Session& s, std::ostream& out) {
  s.config().require_reliabilities();
  const fs::path rel_path = s.eval_path("reliability");
  if (!fs::exists(rel_path)) {
    throw Error(ErrorCode::kInvalidInput, rel_path.string() + " not found; run 'eval reliability' first");
  }
  const ReliabilityTable reliability = ReliabilityTable::from_json(read_json(rel_path));
  Json arr = Json::array();
  for (const auto& t : correlations(s)) {
    arr.push_back(sensitivity_analysis(t, reliability, s.config().reliabilities).to_json());
  }
  write_json(s.eval_path("sensitivity"), arr);
  out << "wrote " << s.eval_path("sensitivity").string() << "\n";
}

inline void cmd_eval_distributions(Session& s, std::ostream& out) {
  const auto scores = s.scores();
  const auto clinical = s.clinical();
  Json arr = Json::array();
  for (Construct c : s.constructs()) {
    arr.push_back(distribution_similarity(scores, clinical, c, s.config().time_point).to_json());
  }
  write_json(s.eval_path("distributions"), arr);
  out << "wrote " << s.eval_path("distributions").string() << "\n";
}

inline void cmd_eval_baseline(Session& s, std::ostream& out) {
  s.config().require_reliabilities();
  const auto scores = s.scores();
  const fs::path sent_path = s.out_dir() / "sentiment.csv";
  if (!fs::exists(sent_path)) throw Error(ErrorCode::kInvalidInput, sent_path.string() + " not found; run 'score' first");
  const auto sentiment = load_sentiment(sent_path);
  const auto clinical = s.clinical();
  Json arr = Json::array();
  for (Construct c : s.constructs()) {
    arr.push_back(baseline_delta(scores, sentiment, clinical, s.config().reliabilities, c, s.config().time_point)
                      .to_json());
  }
  write_json(s.eval_path("baseline"), arr);
  out << "wrote " << s.eval_path("baseline").string() << "\n";
}

inline void cmd_report_render(Session& s, std::ostream& out) {
  const RunConfig& c = s.config();
  Json meta;
  meta["generated_at"] = report_timestamp();
  meta["tool_version"] = kToolVersion;
  meta["model_id"] = c.model_id;
  meta["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  meta["time_point"] = to_string(c.time_point);
  meta["construct"] = c.construct ? Json(to_string(*c.construct)) : Json(nullptr);
  meta["config"] = c.to_json();
  const fs::path summary = s.out_dir() / "score_summary.json";
  meta["scoring"] = fs::exists(summary) ? read_json(summary) : Json(nullptr);

  Json parts[5];
  const char* names[5] = {"correlations", "reliability", "sensitivity", "distributions", "baseline"};
  for (int i = 0; i < 5; ++i) {
    const fs::path p = s.eval_path(names[i]);
    if (!fs::exists(p)) {
      throw Error(ErrorCode::kInvalidInput, p.string() + " not found; run 'eval " + names[i] + "' first");
    }
    parts[i] = read_json(p);
  }
  const Json report = assemble_report(std::move(meta), parts[0], parts[1], parts[2], parts[3], parts[4]);
  write_report(report, s.out_dir() / "reports");
  out << "wrote " << (s.out_dir() / "reports").string() << "\n";
}

/// Writes a synthetic corpus plus a ready-to-run config whose cache already
/// holds every vector, so the full pipeline runs offline.
inline void cmd_synth_generate(const Options& opt, std::ostream& out) {
  SynthConfig sc;
  if (!opt.config_path.empty()) {
    try {
      sc = SynthConfig::from_json(read_json(opt.config_path));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kParseError) throw;
      throw Error(ErrorCode::kInvalidConfig, e.what());
    }
  }
  if (opt.seed) sc.seed = opt.seed;
  const SynthDataset data = generate(sc);

  const fs::path root(opt.out_dir);
  write_responses(data.responses, root / "synth" / "responses.jsonl");
  write_clinical(data.clinical, root / "synth" / "clinical.csv");
  write_file_atomic(root / "synth" / "anchors.json", format_anchors(data.anchors));
  write_json(root / "synth" / "ledger.json", data.ledger);
  {
    EmbeddingCache cache(root / "cache");
    for (const auto& [text, v] : data.vectors) cache.put(text, data.config.model_id, v);
    cache.flush();
  }

  RunConfig rc;
  rc.model_id = data.config.model_id;
  rc.responses_path = "synth/responses.jsonl";
  rc.clinical_path = "synth/clinical.csv";
  rc.anchors_path = "synth/anchors.json";
  rc.cache_path = "cache";
  rc.reliabilities = synth_reliabilities(data.config);
  rc.seed = data.config.seed;
  rc.cache_only = true;
  write_config(rc, root / "config.json");
  out << "generated " << data.responses.size() << " responses for " << data.config.n_participants
      << " participants in " << root.string() << "\n";
}

// ------------------------------------------------------------------- driver

/// Parses `args` (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Semantic projection of free-text responses onto symptom axes", "semproj"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "Run configuration (JSON)");
    cmd->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--time-point", opt.time_point, "t1, t2 or pooled");
    cmd->add_option("--construct", opt.construct, "depression or worry");
    cmd->add_flag("--cache-only", opt.cache_only, "Never contact the embedding service");
    cmd->add_option("--seed", opt.seed, "Random seed");
    cmd->add_flag("--lenient", opt.lenient, "Skip malformed response lines instead of failing");
  };

  std::function<void(Session&, std::ostream&)> action;
  bool synth = false;
  auto leaf = [&](CLI::App* parent, const char* name, const char* desc, auto fn) {
    CLI::App* cmd = parent->add_subcommand(name, desc);
    common(cmd);
    cmd->callback([&action, fn] { action = fn; });
    return cmd;
  };

  CLI::App* axes = app.add_subcommand("axes", "Build or inspect semantic axes");
  axes->require_subcommand(1);
  leaf(axes, "build", "Embed anchors and write axes.json", cmd_axes_build);
  CLI::App* pca = leaf(axes, "pca", "Principal-component layout of anchor embeddings",
                       [&opt](Session& s, std::ostream& o) { cmd_axes_pca(s, o, opt.components); });
  pca->add_option("--components", opt.components, "Number of components")->capture_default_str();

  leaf(&app, "embed", "Fill the embedding cache for anchors and responses", cmd_embed);
  leaf(&app, "score", "Project responses onto every axis and run the lexicon baseline", cmd_score);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate scores against clinical measures");
  eval->require_subcommand(1);
  leaf(eval, "correlations", "Scale-corrected validity correlations", cmd_eval_correlations);
  leaf(eval, "reliability", "Split-half reliability of each format", cmd_eval_reliability);
  leaf(eval, "sensitivity", "Raw, partially and fully corrected correlations", cmd_eval_sensitivity);
  leaf(eval, "distributions", "Wasserstein distance between standardized distributions", cmd_eval_distributions);
  leaf(eval, "baseline", "Projection versus lexicon sentiment", cmd_eval_baseline);

  CLI::App* synth_cmd = app.add_subcommand("synth", "Synthetic data with known ground truth");
  synth_cmd->require_subcommand(1);
  CLI::App* gen = synth_cmd->add_subcommand("generate", "Write a synthetic corpus, cache and config");
  common(gen);
  gen->callback([&synth] { synth = true; });

  CLI::App* report = app.add_subcommand("report", "Assemble the final report");
  report->require_subcommand(1);
  leaf(report, "render", "Write report.json, report.md and plot data", cmd_report_render);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; any other parse failure is a usage error.
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  try {
    if (synth) {
      cmd_synth_generate(opt, out);
      return kExitOk;
    }
    Session session(opt, out);
    action(session, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_validation() ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace semproj::cli
