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

// Ground-truth synthetic datasets.
//
// Each construct c owns an orthonormal frame: a healthy direction h_c and,
// when dim >= 8, one tilt direction w_cj per axis. Axis j is
// a_j = s_j (h_c + g_j w_cj). A text carrying signal S gets the vector
//
//   x = -S h_c + sum_j c_j w_cj + eps,   c_j = -S (sqrt(1 + g_j^2) - 1) / g_j,
//
// with eps drawn in the complement of the frame. Then x . a_j / |a_j| = -S on
// every axis of the construct, so severity equals S exactly.
//
// Signals per response (t = latent trait, sigma = the format's unit noise):
//   structured formats  whole text and each half text: t + fresh N(0, sigma^2)
//   write_text diffuse  each sentence: t + N(0, sigma^2); whole and halves as
//                       structured formats
//   write_text concentrated
//                       one sentence: t + N(0, sigma^2); the others:
//                       N(0, background_sd^2); whole and halves:
//                       whole_text_weight * t + N(0, sigma^2)
//
// Unit texts pair a mood word chosen by the unit's own signal with a unique
// tag, so every text maps to exactly one vector and the lexicon baseline sees
// the same affect the embedding carries.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "semproj/axes.hpp"
#include "semproj/datastore.hpp"
#include "semproj/error.hpp"
#include "semproj/segmentation.hpp"
#include "semproj/types.hpp"

namespace semproj {

enum class TextSignal { kDiffuse, kConcentrated };

inline std::string_view to_string(TextSignal s) {
  return s == TextSignal::kDiffuse ? "diffuse" : "concentrated";
}

struct FormatNoise {
  std::size_t units = 4;
  double unit_sd = 1.0;
};

struct ClinicalShape {
  double mean;
  double sd;
};

struct SynthConfig {
  std::optional<std::uint64_t> seed;
  std::size_t n_participants = 300;
  double time2_fraction = 0.0;
  double retest_correlation = 0.7;
  std::size_t dim = 16;
  std::string model_id = "synthetic-v1";
  std::map<ResponseFormat, FormatNoise> formats = {
      {ResponseFormat::kSelectWords, {4, 0.3}},
      {ResponseFormat::kWriteWords, {4, 0.6}},
      {ResponseFormat::kWritePhrases, {4, 0.9}},
      {ResponseFormat::kWriteText, {4, 1.2}},
  };
  TextSignal text_signal = TextSignal::kConcentrated;
  double whole_text_weight = 0.25;
  double background_sd = 0.5;
  double trait_mean = 0.0;
  double trait_sd = 1.0;
  double latent_correlation = 0.8;   // latent trait vs true clinical score
  double scale_reliability = 0.81;   // clinical error variance = 1/rel - 1
  double orthogonal_sd = 0.5;
  std::size_t anchors_per_pole = 4;
  std::map<Scale, ClinicalShape> clinical_shape = {
      {Scale::kPHQ9, {13.5, 4.0}},
      {Scale::kCESD, {30.0, 8.0}},
      {Scale::kGAD7, {10.5, 3.0}},
      {Scale::kPSWQ, {48.0, 9.0}},
  };

  void validate() const {
    std::vector<std::string> problems;
    if (!seed) problems.push_back("seed is required");
    if (dim < 2) problems.push_back("dim must be at least 2");
    if (n_participants < 3) problems.push_back("n_participants must be at least 3");
    if (!(time2_fraction >= 0.0 && time2_fraction <= 1.0)) problems.push_back("time2_fraction must lie in [0, 1]");
    if (!(std::abs(retest_correlation) <= 1.0)) problems.push_back("retest_correlation must lie in [-1, 1]");
    for (ResponseFormat f : kAllFormats) {
      auto it = formats.find(f);
      if (it == formats.end()) {
        problems.push_back("missing noise settings for " + std::string(to_string(f)));
        continue;
      }
      if (it->second.units == 0) problems.push_back(std::string(to_string(f)) + ": units must be positive");
      if (!(it->second.unit_sd >= 0.0)) problems.push_back(std::string(to_string(f)) + ": unit_sd must be >= 0");
    }
    for (double sd : {background_sd, orthogonal_sd}) {
      if (!(sd >= 0.0)) problems.push_back("noise sds must be >= 0");
    }
    if (!(trait_sd > 0.0)) problems.push_back("trait_sd must be positive");
    if (!(std::abs(latent_correlation) <= 1.0)) problems.push_back("latent_correlation must lie in [-1, 1]");
    if (!(scale_reliability > 0.0 && scale_reliability <= 1.0)) {
      problems.push_back("scale_reliability must lie in (0, 1]");
    }
    if (anchors_per_pole == 0) problems.push_back("anchors_per_pole must be positive");
    for (const auto& [scale, shape] : clinical_shape) {
      if (!(shape.sd >= 0.0)) problems.push_back(std::string(to_string(scale)) + ": sd must be >= 0");
    }
    if (clinical_shape.size() != 4) problems.push_back("clinical_shape needs all four scales");
    if (!problems.empty()) {
      std::string msg = "invalid synthetic config:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw Error(ErrorCode::kInvalidConfig, msg);
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
    j["n_participants"] = n_participants;
    j["time2_fraction"] = time2_fraction;
    j["retest_correlation"] = retest_correlation;
    j["dim"] = dim;
    j["model_id"] = model_id;
    nlohmann::ordered_json f = nlohmann::ordered_json::object();
    for (ResponseFormat fmt : kAllFormats) {
      const auto& n = formats.at(fmt);
      f[std::string(to_string(fmt))] = {{"units", n.units}, {"unit_sd", n.unit_sd}};
    }
    j["formats"] = f;
    j["text_signal"] = to_string(text_signal);
    j["whole_text_weight"] = whole_text_weight;
    j["background_sd"] = background_sd;
    j["trait_mean"] = trait_mean;
    j["trait_sd"] = trait_sd;
    j["latent_correlation"] = latent_correlation;
    j["scale_reliability"] = scale_reliability;
    j["orthogonal_sd"] = orthogonal_sd;
    j["anchors_per_pole"] = anchors_per_pole;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [scale, shape] : clinical_shape) {
      c[std::string(to_string(scale))] = {{"mean", shape.mean}, {"sd", shape.sd}};
    }
    j["clinical_shape"] = c;
    return j;
  }

  /// Overlays the fields present in `j` on the defaults.
  static SynthConfig from_json(const nlohmann::json& j) {
    SynthConfig c;
    try {
      if (j.contains("seed") && !j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
      auto take = [&](const char* key, auto& out) {
        if (j.contains(key)) j.at(key).get_to(out);
      };
      take("n_participants", c.n_participants);
      take("time2_fraction", c.time2_fraction);
      take("retest_correlation", c.retest_correlation);
      take("dim", c.dim);
      take("model_id", c.model_id);
      take("whole_text_weight", c.whole_text_weight);
      take("background_sd", c.background_sd);
      take("trait_mean", c.trait_mean);
      take("trait_sd", c.trait_sd);
      take("latent_correlation", c.latent_correlation);
      take("scale_reliability", c.scale_reliability);
      take("orthogonal_sd", c.orthogonal_sd);
      take("anchors_per_pole", c.anchors_per_pole);
      if (j.contains("text_signal")) {
        const auto s = j.at("text_signal").get<std::string>();
        if (s == "diffuse") c.text_signal = TextSignal::kDiffuse;
        else if (s == "concentrated") c.text_signal = TextSignal::kConcentrated;
        else throw Error(ErrorCode::kInvalidConfig, "text_signal must be diffuse or concentrated");
      }
      if (j.contains("formats")) {
        for (auto it = j.at("formats").begin(); it != j.at("formats").end(); ++it) {
          const auto f = parse_format(it.key());
          if (!f) throw Error(ErrorCode::kInvalidConfig, "unknown format '" + it.key() + "'");
          auto& n = c.formats[*f];
          if (it.value().contains("units")) n.units = it.value().at("units").get<std::size_t>();
          if (it.value().contains("unit_sd")) n.unit_sd = it.value().at("unit_sd").get<double>();
        }
      }
      if (j.contains("clinical_shape")) {
        for (auto it = j.at("clinical_shape").begin(); it != j.at("clinical_shape").end(); ++it) {
          const auto s = parse_scale(it.key());
          if (!s) throw Error(ErrorCode::kInvalidConfig, "unknown scale '" + it.key() + "'");
          c.clinical_shape[*s] = {it.value().at("mean").get<double>(), it.value().at("sd").get<double>()};
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidConfig, std::string("synthetic config: ") + e.what());
    }
    return c;
  }
};

/// Reliability targets implied by the generator, before discretization.
struct SynthTheory {
  std::optional<double> reliability;   // of the full-length score
  std::optional<double> split_half;    // Spearman-Brown stepped half correlation
  std::optional<double> expected_r;    // observed severity vs clinical total
};

struct SynthDataset {
  SynthConfig config;
  std::vector<AnchorSet> anchors;
  std::vector<RawResponse> responses;
  std::vector<ClinicalRecord> clinical;
  std::vector<std::pair<std::string, Embedding>> vectors;  // distinct texts, generation order
  nlohmann::ordered_json ledger;
};

namespace synth_detail {

// Mood words ordered from most healthy to most symptomatic.
inline const std::vector<std::string>& mood_bank(Construct c) {
  static const std::vector<std::string> depression = {
      "joyful", "happy", "cheerful", "hopeful", "glad", "calm", "okay", "fine",
      "gloomy", "empty", "low", "lonely", "tired", "sad", "miserable", "depressed"};
  static const std::vector<std::string> worry = {
      "comfortable", "relaxed", "peaceful", "confident", "serene", "safe", "secure", "calm",
      "okay", "anxious", "nervous", "restless", "worried", "tense", "uneasy", "terrified"};
  return c == Construct::kDepression ? depression : worry;
}

inline const std::array<std::string_view, 6>& axis_names() {
  static const std::array<std::string_view, 6> names = {"DEP_CESD", "DEP_WORDS", "DEP_ZUNG",
                                                        "WOR_STAI", "WOR_WORDS", "WOR_ZUNG"};
  return names;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Equiprobable bins of the signal's marginal distribution.
inline const std::string& word_for(Construct c, double standardized) {
  const auto& bank = mood_bank(c);
  const double u = normal_cdf(standardized);
  auto idx = static_cast<std::size_t>(u * static_cast<double>(bank.size()));
  return bank[std::min(idx, bank.size() - 1)];
}

struct Frame {
  Eigen::VectorXd healthy;
  std::vector<Eigen::VectorXd> tilt;  // empty when dim < 8
  std::vector<double> gamma;          // per axis
  std::vector<double> scale;          // per axis
};

class Generator {
 public:
  explicit Generator(const SynthConfig& config) : cfg_(config), rng_(*config.seed) {}

  SynthDataset run() {
    build_frames();
    SynthDataset out;
    out.config = cfg_;
    make_anchors(out);

    const std::size_t n = cfg_.n_participants;
    const std::size_t width = std::max<std::size_t>(4, std::to_string(n).size());
    nlohmann::ordered_json observations = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const std::string digits = std::to_string(i + 1);
      const std::string id = "s" + std::string(width - std::min(width, digits.size()), '0') + digits;
      std::map<Construct, double> trait;
      for (Construct c : kAllConstructs) trait[c] = std::normal_distribution<double>(0.0, 1.0)(rng_);
      const bool retest = uniform(rng_) < cfg_.time2_fraction;
      for (int tp = 1; tp <= (retest ? 2 : 1); ++tp) {
        if (tp == 2) {
          const double r = cfg_.retest_correlation;
          for (Construct c : kAllConstructs) trait[c] = r * trait[c] + std::sqrt(1.0 - r * r) * standard(rng_);
        }
        observations.push_back(observe(out, id, tp, trait));
      }
    }
    out.vectors = std::move(vectors_);
    out.ledger["config"] = cfg_.to_json();
    out.ledger["theory"] = theory_json();
    out.ledger["axes"] = axes_json();
    out.ledger["observations"] = std::move(observations);
    return out;
  }

 private:
  std::size_t frame_dims() const { return cfg_.dim >= 8 ? 8 : 2; }

  void build_frames() {
    const auto d = static_cast<Eigen::Index>(cfg_.dim);
    const auto k = static_cast<Eigen::Index>(frame_dims());
    Eigen::MatrixXd raw(d, k);
    for (Eigen::Index c = 0; c < k; ++c) {
      for (Eigen::Index r = 0; r < d; ++r) raw(r, c) = standard(rng_);
    }
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ() * Eigen::MatrixXd::Identity(d, k);
    basis_ = q;
    for (std::size_t ci = 0; ci < kAllConstructs.size(); ++ci) {
      Frame f;
      if (k == 8) {
        f.healthy = q.col(static_cast<Eigen::Index>(ci * 4));
        for (int j = 0; j < 3; ++j) {
          f.tilt.push_back(q.col(static_cast<Eigen::Index>(ci * 4 + 1 + j)));
          f.gamma.push_back(0.3 * (j + 1));
        }
      } else {
        f.healthy = q.col(static_cast<Eigen::Index>(ci));
        f.gamma = {0.0, 0.0, 0.0};
      }
      f.scale = {1.0, 1.5, 2.0};
      frames_[kAllConstructs[ci]] = std::move(f);
    }
  }

  Eigen::VectorXd axis_vector(Construct c, std::size_t j) const {
    const Frame& f = frames_.at(c);
    Eigen::VectorXd a = f.healthy;
    if (!f.tilt.empty()) a += f.gamma[j] * f.tilt[j];
    return f.scale[j] * a;
  }

  Eigen::VectorXd orthogonal_noise() {
    Eigen::VectorXd e(static_cast<Eigen::Index>(cfg_.dim));
    for (Eigen::Index r = 0; r < e.size(); ++r) e(r) = cfg_.orthogonal_sd * standard(rng_);
    // Gram-Schmidt against the whole frame keeps every axis projection exact.
    e -= basis_ * (basis_.transpose() * e);
    return e;
  }

  Embedding signal_vector(Construct c, double s) {
    const Frame& f = frames_.at(c);
    Eigen::VectorXd x = -s * f.healthy;
    for (std::size_t j = 0; j < f.tilt.size(); ++j) {
      const double g = f.gamma[j];
      x += (-s * (std::sqrt(1.0 + g * g) - 1.0) / g) * f.tilt[j];
    }
    x += orthogonal_noise();
    return to_embedding(x);
  }

  static Embedding to_embedding(const Eigen::VectorXd& x) {
    Embedding v(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) v[static_cast<std::size_t>(i)] = static_cast<float>(x(i));
    return v;
  }

  /// First registration wins, so a repeated text keeps one vector.
  void register_text(const std::string& text, Embedding v) {
    if (index_.emplace(text, vectors_.size()).second) vectors_.emplace_back(text, std::move(v));
  }

  void register_signal(Construct c, const std::string& text, double s) {
    if (index_.count(text)) return;
    register_text(text, signal_vector(c, s));
  }

  void make_anchors(SynthDataset& out) {
    const auto names = axis_names();
    for (std::size_t a = 0; a < names.size(); ++a) {
      const Construct c = a < 3 ? Construct::kDepression : Construct::kWorry;
      const std::size_t j = a % 3;
      AnchorSet set;
      set.axis_name = std::string(names[a]);
      set.construct = c;
      set.kind = names[a].find("WORDS") != std::string_view::npos ? AnchorKind::kWord : AnchorKind::kItem;
      const Eigen::VectorXd axis = axis_vector(c, j);
      for (int pole = 0; pole < 2; ++pole) {
        // Zero-mean offsets make each pole mean exactly +-axis/2.
        std::vector<Eigen::VectorXd> offsets;
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cfg_.dim));
        for (std::size_t i = 0; i < cfg_.anchors_per_pole; ++i) {
          Eigen::VectorXd o(static_cast<Eigen::Index>(cfg_.dim));
          for (Eigen::Index r = 0; r < o.size(); ++r) o(r) = cfg_.orthogonal_sd * standard(rng_);
          mean += o;
          offsets.push_back(std::move(o));
        }
        mean /= static_cast<double>(cfg_.anchors_per_pole);
        for (std::size_t i = 0; i < offsets.size(); ++i) {
          const std::string text = text::to_lower(set.axis_name) + (pole == 0 ? " healthy " : " symptom ") +
                                   std::to_string(i + 1);
          const Eigen::VectorXd v = offsets[i] - mean + (pole == 0 ? 0.5 : -0.5) * axis;
          register_text(text, to_embedding(v));
          (pole == 0 ? set.positive : set.negative).push_back(text);
        }
      }
      out.anchors.push_back(std::move(set));
    }
  }

  std::string next_tag() {
    char buf[16];
    std::snprintf(buf, sizeof buf, "u%06zu", ++tag_counter_);
    return buf;
  }

  std::string unit_text(Construct c, ResponseFormat f, double standardized) {
    const std::string& word = word_for(c, standardized);
    const std::string tag = next_tag();
    switch (f) {
      case ResponseFormat::kSelectWords:
      case ResponseFormat::kWriteWords: return word + " " + tag;
      case ResponseFormat::kWritePhrases: return "feeling " + word + " " + tag;
      case ResponseFormat::kWriteText: return "Entry " + tag + " I felt " + word + ".";
    }
    return word;
  }

  nlohmann::ordered_json observe(SynthDataset& out, const std::string& id, int tp,
                                 const std::map<Construct, double>& trait) {
    nlohmann::ordered_json obs;
    obs["participant_id"] = id;
    obs["time_point"] = tp;
    for (Construct c : kAllConstructs) {
      const double t = cfg_.trait_mean + cfg_.trait_sd * trait.at(c);
      obs[std::string("trait_") + std::string(to_string(c))] = t;
      for (ResponseFormat f : kAllFormats) out.responses.push_back(respond(c, f, id, tp, t));
    }
    ClinicalRecord rec{id, tp, 0, 0, 0, 0};
    nlohmann::ordered_json pre = nlohmann::ordered_json::object();
    const double rho = cfg_.latent_correlation;
    const double err_sd = std::sqrt(1.0 / cfg_.scale_reliability - 1.0);
    for (Construct c : kAllConstructs) {
      for (Scale s : scales_for(c)) {
        const double truth = rho * trait.at(c) + std::sqrt(1.0 - rho * rho) * standard(rng_);
        const double observed = (truth + err_sd * standard(rng_)) * std::sqrt(cfg_.scale_reliability);
        const auto& shape = cfg_.clinical_shape.at(s);
        const double value = shape.mean + shape.sd * observed;
        pre[std::string(to_string(s))] = value;
        const auto range = scale_range(s);
        const int total = static_cast<int>(std::clamp(std::lround(value), static_cast<long>(range.min),
                                                      static_cast<long>(range.max)));
        switch (s) {
          case Scale::kPHQ9: rec.phq9 = total; break;
          case Scale::kCESD: rec.cesd = total; break;
          case Scale::kGAD7: rec.gad7 = total; break;
          case Scale::kPSWQ: rec.pswq = total; break;
        }
      }
    }
    obs["clinical_continuous"] = std::move(pre);
    out.clinical.push_back(rec);
    return obs;
  }

  RawResponse respond(Construct c, ResponseFormat f, const std::string& id, int tp, double t) {
    const FormatNoise& noise = cfg_.formats.at(f);
    const double sigma = noise.unit_sd;
    const bool text = f == ResponseFormat::kWriteText;
    const bool concentrated = text && cfg_.text_signal == TextSignal::kConcentrated;
    const std::size_t k = noise.units;
    const std::size_t signal_unit = concentrated ? static_cast<std::size_t>(uniform(rng_) * static_cast<double>(k)) % k : 0;

    std::vector<std::string> units;
    std::vector<double> signals;
    for (std::size_t u = 0; u < k; ++u) {
      double s;
      double marginal_sd;
      if (!concentrated || u == signal_unit) {
        s = t + sigma * standard(rng_);
        marginal_sd = std::sqrt(cfg_.trait_sd * cfg_.trait_sd + sigma * sigma);
      } else {
        s = cfg_.background_sd * standard(rng_);
        marginal_sd = cfg_.background_sd;
      }
      const double z = marginal_sd > 0.0 ? (s - (!concentrated || u == signal_unit ? cfg_.trait_mean : 0.0)) / marginal_sd : 0.0;
      units.push_back(unit_text(c, f, z));
      signals.push_back(s);
    }
    RawResponse r{id, tp, c, f, join_units(units, f)};
    // A lone word unit keeps its tag only under comma segmentation.
    if (k == 1 && is_word_format(f)) r.text += ",";

    const double weight = concentrated ? cfg_.whole_text_weight : 1.0;
    auto composite = [&] { return weight * t + sigma * standard(rng_); };
    register_signal(c, r.text, composite());
    if (text) {
      for (std::size_t u = 0; u < k; ++u) register_signal(c, units[u], signals[u]);
    }
    if (k >= 2) {
      const auto [a, b] = odd_even_split(units);
      register_signal(c, join_units(a, f), composite());
      register_signal(c, join_units(b, f), composite());
    }
    return r;
  }

  nlohmann::ordered_json axes_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    const auto names = axis_names();
    for (std::size_t a = 0; a < names.size(); ++a) {
      const Construct c = a < 3 ? Construct::kDepression : Construct::kWorry;
      const Frame& f = frames_.at(c);
      arr.push_back({{"axis", names[a]}, {"construct", to_string(c)}, {"gamma", f.gamma[a % 3]}, {"scale", f.scale[a % 3]}});
    }
    return arr;
  }

  nlohmann::ordered_json theory_json() const;

  SynthConfig cfg_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> standard{0.0, 1.0};
  std::uniform_real_distribution<double> uniform{0.0, 1.0};
  Eigen::MatrixXd basis_;
  std::map<Construct, Frame> frames_;
  std::vector<std::pair<std::string, Embedding>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t tag_counter_ = 0;
};

}  // namespace synth_detail

/// Closed-form targets for one report row under the generator's model.
/// Rows without a closed form (max-abs aggregation, concentrated sentence
/// means) report no target.
inline SynthTheory synth_theory(const SynthConfig& cfg, const FormatRow& row) {
  const auto& noise = cfg.formats.at(row.format);
  const double tau2 = cfg.trait_sd * cfg.trait_sd;
  const double s2 = noise.unit_sd * noise.unit_sd;
  const bool concentrated = row.format == ResponseFormat::kWriteText && cfg.text_signal == TextSignal::kConcentrated;
  auto stepped = [](double r) { return 2.0 * r / (1.0 + r); };
  SynthTheory out;
  if (row.representation == Representation::kWhole) {
    const double w2 = concentrated ? cfg.whole_text_weight * cfg.whole_text_weight : 1.0;
    const double rel = w2 * tau2 + s2 > 0.0 ? w2 * tau2 / (w2 * tau2 + s2) : 1.0;
    out.reliability = rel;
    if (noise.units >= 2) out.split_half = stepped(rel);
  } else if (row.representation == Representation::kUnitMean && !concentrated) {
    const double k = static_cast<double>(noise.units);
    out.reliability = tau2 / (tau2 + s2 / k);
    if (noise.units >= 2) {
      const double h1 = std::ceil(k / 2.0), h2 = std::floor(k / 2.0);
      const double r = tau2 / std::sqrt((tau2 + s2 / h1) * (tau2 + s2 / h2));
      out.split_half = stepped(r);
    }
  }
  if (out.reliability) out.expected_r = cfg.latent_correlation * std::sqrt(*out.reliability * cfg.scale_reliability);
  return out;
}

inline nlohmann::ordered_json synth_detail::Generator::theory_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  for (const auto& row : report_rows()) {
    const auto th = synth_theory(cfg_, row);
    rows.push_back({{"row", row.name()},
                    {"reliability", opt(th.reliability)},
                    {"split_half", opt(th.split_half)},
                    {"expected_r", opt(th.expected_r)}});
  }
  return rows;
}

/// Generates a dataset; identical configs give identical datasets.
inline SynthDataset generate(const SynthConfig& config) {
  config.validate();
  return synth_detail::Generator(config).run();
}

/// Reliabilities matching the generator, for run configs over its output.
inline std::map<Scale, double> synth_reliabilities(const SynthConfig& config) {
  return {{Scale::kPHQ9, config.scale_reliability},
          {Scale::kCESD, config.scale_reliability},
          {Scale::kGAD7, config.scale_reliability},
          {Scale::kPSWQ, config.scale_reliability}};
}

}  // namespace semproj
