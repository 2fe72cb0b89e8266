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

// Semantic axes: a direction in embedding space running from the negative
// (symptomatic) pole to the positive (healthy) pole of a construct, built as
// the difference of the two pole centroids.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "semproj/error.hpp"
#include "semproj/text.hpp"
#include "semproj/types.hpp"

namespace semproj {

inline constexpr double kDegenerateAxisNorm = 1e-10;

struct AnchorSet {
  std::string axis_name;
  Construct construct = Construct::kDepression;
  AnchorKind kind = AnchorKind::kWord;
  std::vector<std::string> positive;
  std::vector<std::string> negative;

  /// Returns every invariant violation; empty when the set is usable.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (axis_name.empty()) out.push_back("axis name is empty");
    if (positive.empty()) out.push_back(axis_name + ": positive pole is empty");
    if (negative.empty()) out.push_back(axis_name + ": negative pole is empty");
    std::set<std::string> positive_keys;
    for (const auto& p : positive) positive_keys.insert(text::to_lower(text::trim(p)));
    for (const auto& q : negative) {
      if (positive_keys.count(text::to_lower(text::trim(q)))) {
        out.push_back(axis_name + ": anchor '" + q + "' appears in both poles");
      }
    }
    auto check_text = [&](const std::string& t) {
      if (text::trim(t).empty()) out.push_back(axis_name + ": blank anchor text");
      if (kind == AnchorKind::kWord && t.find_first_of(".!?") != std::string::npos) {
        out.push_back(axis_name + ": word anchor '" + t + "' contains sentence punctuation");
      }
    };
    for (const auto& t : positive) check_text(t);
    for (const auto& t : negative) check_text(t);
    return out;
  }

  void validate() const {
    auto v = violations();
    if (!v.empty()) throw Error(ErrorCode::kInvalidInput, v.front());
  }
};

/// Immutable once built. `direction` points toward the positive pole.
struct SemanticAxis {
  std::string name;
  Construct construct = Construct::kDepression;
  std::string model_id;
  std::size_t dim = 0;
  std::vector<double> direction;
  double norm = 0.0;
  AnchorSet provenance;
};

namespace detail {
inline std::vector<double> pole_mean(const std::vector<std::string>& pole,
                                     const std::unordered_map<std::string, Embedding>& emb,
                                     std::size_t& dim) {
  std::vector<double> sum;
  for (const auto& anchor : pole) {
    auto it = emb.find(anchor);
    if (it == emb.end()) throw Error(ErrorCode::kMissingEmbedding, "no embedding for '" + anchor + "'");
    const Embedding& v = it->second;
    if (dim == 0) dim = v.size();
    if (v.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "anchor '" + anchor + "' has dimension " +
                                                     std::to_string(v.size()) + ", expected " +
                                                     std::to_string(dim));
    }
    if (sum.empty()) sum.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
  }
  for (double& s : sum) s /= static_cast<double>(pole.size());
  return sum;
}
}  // namespace detail

inline double euclidean_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline SemanticAxis build_axis(const AnchorSet& anchors,
                               const std::unordered_map<std::string, Embedding>& anchor_embeddings,
                               std::string model_id) {
  anchors.validate();
  std::size_t dim = 0;
  const auto pos = detail::pole_mean(anchors.positive, anchor_embeddings, dim);
  const auto neg = detail::pole_mean(anchors.negative, anchor_embeddings, dim);
  if (dim < 2) throw Error(ErrorCode::kInvalidInput, "embedding dimension must be at least 2");

  SemanticAxis axis;
  axis.name = anchors.axis_name;
  axis.construct = anchors.construct;
  axis.model_id = std::move(model_id);
  axis.dim = dim;
  axis.direction.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) axis.direction[i] = pos[i] - neg[i];
  axis.norm = euclidean_norm(axis.direction);
  if (!(axis.norm >= kDegenerateAxisNorm)) {
    throw Error(ErrorCode::kDegenerateAxis,
                anchors.axis_name + ": pole centroids coincide (norm " + std::to_string(axis.norm) + ")");
  }
  axis.provenance = anchors;
  return axis;
}

/// Cosine of the angle between two axis directions.
inline double axis_similarity(const SemanticAxis& a, const SemanticAxis& b) {
  if (a.dim != b.dim || a.direction.size() != b.direction.size()) {
    throw Error(ErrorCode::kDimensionMismatch, a.name + " vs " + b.name);
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.direction.size(); ++i) dot += a.direction[i] * b.direction[i];
  return std::clamp(dot / (a.norm * b.norm), -1.0, 1.0);
}

struct PcaLayout {
  std::vector<std::pair<std::string, std::vector<double>>> points;
  std::vector<double> explained_variance_ratio;
  std::vector<double> component_variance;  // eigenvalues of the sample covariance
};

/// Projects centered points onto their top principal components. Each
/// component's sign is fixed so that its largest-magnitude loading is
/// positive, which keeps layouts stable across runs.
inline PcaLayout pca_layout(const std::vector<std::pair<std::string, Embedding>>& embeddings,
                            std::size_t components = 2) {
  if (components == 0) throw Error(ErrorCode::kInvalidInput, "components must be positive");
  const std::size_t n = embeddings.size();
  if (n == 0) throw Error(ErrorCode::kInsufficientPoints, "no points");
  const std::size_t d = embeddings.front().second.size();
  for (const auto& [label, v] : embeddings) {
    if (v.size() != d) throw Error(ErrorCode::kDimensionMismatch, "point '" + label + "'");
  }
  std::set<Embedding> distinct;
  for (const auto& e : embeddings) distinct.insert(e.second);
  if (distinct.size() < components + 1 || components > d) {
    throw Error(ErrorCode::kInsufficientPoints,
                std::to_string(distinct.size()) + " distinct points for " +
                    std::to_string(components) + " components");
  }

  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) x(i, j) = embeddings[i].second[j];
  }
  x.rowwise() -= x.colwise().mean();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  const double total = s.squaredNorm();
  if (!(total > 0.0)) throw Error(ErrorCode::kInsufficientPoints, "zero variance");

  PcaLayout out;
  Eigen::MatrixXd v = svd.matrixV().leftCols(static_cast<Eigen::Index>(components));
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index arg = 0;
    v.col(c).cwiseAbs().maxCoeff(&arg);
    if (v(arg, c) < 0) v.col(c) *= -1.0;
    const double sq = s(c) * s(c);
    out.explained_variance_ratio.push_back(sq / total);
    out.component_variance.push_back(sq / static_cast<double>(n - 1));
  }
  const Eigen::MatrixXd proj = x * v;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> p(components);
    for (std::size_t c = 0; c < components; ++c) p[c] = proj(i, c);
    out.points.emplace_back(embeddings[i].first, std::move(p));
  }
  return out;
}

/// Name-unique collection of axes, persisted with full provenance.
class AxisRegistry {
 public:
  void add(SemanticAxis axis) {
    if (axes_.count(axis.name)) throw Error(ErrorCode::kDuplicateKey, "axis '" + axis.name + "'");
    axes_.emplace(axis.name, std::move(axis));
  }

  const SemanticAxis& at(const std::string& name) const {
    auto it = axes_.find(name);
    if (it == axes_.end()) throw Error(ErrorCode::kInvalidInput, "unknown axis '" + name + "'");
    return it->second;
  }

  bool contains(const std::string& name) const { return axes_.count(name) > 0; }

  /// Axes of one construct, ordered by name.
  std::vector<const SemanticAxis*> for_construct(Construct c) const {
    std::vector<const SemanticAxis*> out;
    for (const auto& [name, axis] : axes_) {
      if (axis.construct == c) out.push_back(&axis);
    }
    return out;
  }

  std::vector<const SemanticAxis*> all() const {
    std::vector<const SemanticAxis*> out;
    for (const auto& [name, axis] : axes_) out.push_back(&axis);
    return out;
  }

  std::size_t size() const { return axes_.size(); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [name, a] : axes_) {
      nlohmann::ordered_json j;
      j["name"] = a.name;
      j["construct"] = to_string(a.construct);
      j["model_id"] = a.model_id;
      j["dim"] = a.dim;
      j["norm"] = a.norm;
      j["direction"] = a.direction;
      j["anchors"] = {{"kind", to_string(a.provenance.kind)},
                      {"positive", a.provenance.positive},
                      {"negative", a.provenance.negative}};
      arr.push_back(std::move(j));
    }
    return arr;
  }

  static AxisRegistry from_json(const nlohmann::json& arr) {
    AxisRegistry reg;
    try {
      for (const auto& j : arr) {
        SemanticAxis a;
        a.name = j.at("name").get<std::string>();
        a.construct = require(parse_construct(j.at("construct").get<std::string>()), "construct",
                              j.at("construct").get<std::string>());
        a.model_id = j.at("model_id").get<std::string>();
        a.direction = j.at("direction").get<std::vector<double>>();
        a.dim = a.direction.size();
        if (j.at("dim").get<std::size_t>() != a.dim) {
          throw Error(ErrorCode::kDimensionMismatch, "axis '" + a.name + "' direction length");
        }
        a.norm = euclidean_norm(a.direction);
        if (a.norm < kDegenerateAxisNorm) throw Error(ErrorCode::kDegenerateAxis, a.name);
        const auto& anc = j.at("anchors");
        a.provenance.axis_name = a.name;
        a.provenance.construct = a.construct;
        a.provenance.kind = require(parse_anchor_kind(anc.at("kind").get<std::string>()), "kind",
                                    anc.at("kind").get<std::string>());
        a.provenance.positive = anc.at("positive").get<std::vector<std::string>>();
        a.provenance.negative = anc.at("negative").get<std::vector<std::string>>();
        reg.add(std::move(a));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, std::string("axis registry: ") + e.what());
    }
    return reg;
  }

 private:
  std::map<std::string, SemanticAxis> axes_;
};

}  // namespace semproj
