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

// Statistics kernel: product-moment correlation with exact t-test p-values,
// attenuation corrections, split-half reliability, z-scores and the 1-D
// Wasserstein distance between empirical distributions.
//
// Standard deviations use the n-1 denominator throughout.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "semproj/error.hpp"
#include "semproj/special_functions.hpp"

namespace semproj {

enum class Stars { kNone, kOne, kTwo, kThree };

inline std::string_view to_string(Stars s) {
  switch (s) {
    case Stars::kNone: return "ns";
    case Stars::kOne: return "*";
    case Stars::kTwo: return "**";
    case Stars::kThree: return "***";
  }
  return "";
}

/// Suffix as printed next to a coefficient ("" for non-significant).
inline std::string_view star_suffix(Stars s) { return s == Stars::kNone ? "" : to_string(s); }

inline Stars stars_for(double p) {
  if (p < 0.001) return Stars::kThree;
  if (p < 0.01) return Stars::kTwo;
  if (p < 0.05) return Stars::kOne;
  return Stars::kNone;
}

struct CorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  double t = 0.0;
  double p = 1.0;
  Stars stars = Stars::kNone;
};

inline CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(x.size()) + " vs " + std::to_string(y.size()) + " observations");
  }
  const std::size_t n = x.size();
  if (n < 3) throw Error(ErrorCode::kTooFewObservations, "pearson needs n >= 3, got " + std::to_string(n));

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorCode::kZeroVariance, "constant series in pearson");

  CorrelationResult out;
  out.n = n;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  // 1 - r^2 = SSE / Syy for the least-squares line; this stays accurate
  // when |r| is close to 1, where 1 - r*r cancels.
  const double slope = sxy / sxx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = (y[i] - my) - slope * (x[i] - mx);
    sse += e * e;
  }
  const double one_minus = std::min(1.0, sse / syy);
  if (one_minus <= 0.0) {
    out.t = std::copysign(std::numeric_limits<double>::infinity(), out.r);
    out.p = 0.0;
  } else {
    out.t = out.r * std::sqrt(df / one_minus);
    out.p = special::student_t_two_sided(out.t, df);
  }
  out.stars = stars_for(out.p);
  return out;
}

inline CorrelationResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(std::span<const double>(x), std::span<const double>(y));
}

/// A corrected correlation; `clamped` marks corrections that overshot +-1.
struct Corrected {
  double value = 0.0;
  bool clamped = false;
};

namespace detail {
inline void require_reliability(double rel, std::string_view what) {
  if (!(rel > 0.0 && rel <= 1.0)) {
    throw Error(ErrorCode::kInvalidReliability,
                std::string(what) + " must lie in (0, 1], got " + std::to_string(rel));
  }
}

inline Corrected clamp_corrected(double v) {
  if (v > 1.0) return {1.0, true};
  if (v < -1.0) return {-1.0, true};
  return {v, false};
}
}  // namespace detail

/// Corrects for unreliability of the clinical measure only.
inline Corrected partial_disattenuate(double r_observed, double r_scale) {
  detail::require_reliability(r_scale, "scale reliability");
  return detail::clamp_corrected(r_observed / std::sqrt(r_scale));
}

/// Corrects for unreliability on both sides. The result is an upper-bound
/// approximation, not a population estimate.
inline Corrected full_disattenuate(double r_observed, std::optional<double> r_projection, double r_scale) {
  if (!r_projection) throw Error(ErrorCode::kUndefinedReliability, "projection reliability is undefined");
  detail::require_reliability(*r_projection, "projection reliability");
  detail::require_reliability(r_scale, "scale reliability");
  return detail::clamp_corrected(r_observed / std::sqrt(*r_projection * r_scale));
}

/// Steps a half-length correlation up to full length; undefined unless the
/// half correlation is positive.
inline std::optional<double> spearman_brown(double r_half) {
  if (!(r_half >= -1.0 && r_half <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "half correlation outside [-1, 1]");
  }
  if (r_half <= 0.0) return std::nullopt;
  return 2.0 * r_half / (1.0 + r_half);
}

struct ReliabilityEstimate {
  std::optional<double> r_half;
  std::optional<double> r_sb;
  std::size_t n_pairs = 0;
  std::size_t excluded = 0;
};

inline ReliabilityEstimate split_half_reliability(std::span<const std::pair<double, double>> half_scores,
                                                  std::size_t excluded = 0) {
  if (half_scores.size() < 3) {
    throw Error(ErrorCode::kTooFewObservations,
                "split-half needs 3 usable pairs, got " + std::to_string(half_scores.size()));
  }
  std::vector<double> a, b;
  a.reserve(half_scores.size());
  b.reserve(half_scores.size());
  for (const auto& [sa, sb] : half_scores) {
    a.push_back(sa);
    b.push_back(sb);
  }
  ReliabilityEstimate out;
  out.n_pairs = half_scores.size();
  out.excluded = excluded;
  out.r_half = pearson(a, b).r;
  out.r_sb = spearman_brown(*out.r_half);
  return out;
}

inline std::vector<double> zscore(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorCode::kTooFewObservations, "zscore needs n >= 2");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw Error(ErrorCode::kZeroVariance, "constant series in zscore");
  std::vector<double> out;
  out.reserve(n);
  for (double v : x) out.push_back((v - mean) / sd);
  return out;
}

/// W1 between two empirical distributions, computed exactly as the integral
/// of |F^-1(t) - G^-1(t)| over the merged quantile breakpoints i/n and j/m.
/// Breakpoints are compared in integer arithmetic (i*m vs j*n).
inline double wasserstein_1d(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::kEmptySeries, "wasserstein_1d needs two non-empty series");
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const auto n = static_cast<std::uint64_t>(xs.size());
  const auto m = static_cast<std::uint64_t>(ys.size());
  std::uint64_t i = 0, j = 0;      // current quantile cell of each sample
  std::uint64_t position = 0;      // current t, in units of 1/(n*m)
  double total = 0.0;
  while (i < n && j < m) {
    const std::uint64_t next_x = (i + 1) * m;
    const std::uint64_t next_y = (j + 1) * n;
    const std::uint64_t next = std::min(next_x, next_y);
    total += static_cast<double>(next - position) * std::abs(xs[i] - ys[j]);
    position = next;
    if (next_x == next) ++i;
    if (next_y == next) ++j;
  }
  return total / static_cast<double>(n * m);
}

inline double wasserstein_1d(const std::vector<double>& x, const std::vector<double>& y) {
  return wasserstein_1d(std::span<const double>(x), std::span<const double>(y));
}

/// Distance between the standardized distributions; 0 when one series is a
/// positive affine transform of the other.
inline double wasserstein_z(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::kEmptySeries, "wasserstein_z needs two non-empty series");
  return wasserstein_1d(zscore(x), zscore(y));
}

inline double wasserstein_z(const std::vector<double>& x, const std::vector<double>& y) {
  return wasserstein_z(std::span<const double>(x), std::span<const double>(y));
}

}  // namespace semproj
