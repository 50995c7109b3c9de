/*
 * Copyright 2026 The ovalue Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Monte Carlo o-values of scoring metrics against a DBT pool: AUC, NAUC,
// the y-value of a curve at a fixed x, and the o-value-standardized PRC.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "ovalue/dbt.hpp"
#include "ovalue/metrics.hpp"
#include "ovalue/parallel.hpp"

namespace ovalue {

/// Per-(pool, kind, pi) sorted sample AUCs, filled on first use. Safe to
/// share between threads.
class AucCache {
 public:
  template <typename Compute>
  std::shared_ptr<const std::vector<double>> get(const DbtPool& pool,
                                                 CurveKind kind, double pi,
                                                 Compute&& compute) {
    const Key key{&pool, pool.seed, pool.size(), pool.depth, kind,
                  std::bit_cast<std::uint64_t>(pi)};
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      it = entries_
               .emplace(key, std::make_shared<const std::vector<double>>(
                                 compute()))
               .first;
    }
    return it->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

 private:
  using Key = std::tuple<const DbtPool*, std::uint64_t, std::size_t, int,
                         CurveKind, std::uint64_t>;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const std::vector<double>>> entries_;
};

struct ScoringOpsConfig {
  const DbtPool* pool = nullptr;
  unsigned threads = 1;
  AucCache* auc_cache = nullptr;  // optional
};

namespace detail {

inline const DbtPool& require_pool(const ScoringOpsConfig& cfg) {
  if (cfg.pool == nullptr || cfg.pool->samples.empty()) {
    throw std::invalid_argument("scoring o-values need a non-empty DBT pool");
  }
  return *cfg.pool;
}

inline double fraction_below(const std::vector<double>& sorted, double value) {
  const auto below = std::lower_bound(sorted.begin(), sorted.end(), value);
  return static_cast<double>(below - sorted.begin()) /
         static_cast<double>(sorted.size());
}

// Rounding in x = pi(1-beta) + (1-pi)alpha can leave the (1, 0) anchor a
// few ulps short of 1.
inline constexpr double kRangeSlack = 1e-12;

}  // namespace detail

/// AUC of every pool sample's curve, in pool order.
inline std::vector<double> sample_aucs(CurveKind kind, double pi,
                                       const DbtPool& pool,
                                       unsigned threads = 1) {
  if (pool.samples.empty()) throw std::invalid_argument("empty DBT pool");
  const auto order = in_order_indices(pool.depth);
  std::vector<double> out(pool.size());
  parallel_for_chunks(pool.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t g = lo; g < hi; ++g) {
      const auto curve = sample_to_curve(pool.samples[g], pi, kind, order);
      out[g] = auc(curve_points(kind, curve));
    }
  });
  return out;
}

/// Sorted sample AUCs; served from cfg.auc_cache when one is attached.
inline std::shared_ptr<const std::vector<double>> reference_aucs(
    CurveKind kind, double pi, const ScoringOpsConfig& cfg) {
  const DbtPool& pool = detail::require_pool(cfg);
  auto compute = [&] {
    auto values = sample_aucs(kind, pi, pool, cfg.threads);
    std::sort(values.begin(), values.end());
    return values;
  };
  if (cfg.auc_cache != nullptr) return cfg.auc_cache->get(pool, kind, pi, compute);
  return std::make_shared<const std::vector<double>>(compute());
}

/// Fraction of pool curves whose AUC is strictly below `observed_auc`.
inline double ops_auc(CurveKind kind, double observed_auc, double pi,
                      const ScoringOpsConfig& cfg) {
  if (!std::isfinite(observed_auc)) {
    throw std::invalid_argument("observed AUC must be finite");
  }
  if (!(pi > 0.0 && pi < 1.0)) {
    throw DegeneratePrevalence("prevalence must lie strictly inside (0, 1)");
  }
  return detail::fraction_below(*reference_aucs(kind, pi, cfg), observed_auc);
}

/// NAUC is AUC rescaled by a positive constant given pi, so its o-value is
/// the AUC o-value of the rescaled observation.
inline double ops_nauc(CurveKind kind, double observed_nauc, double pi,
                       const ScoringOpsConfig& cfg) {
  if (!(observed_nauc >= 0.0)) throw std::invalid_argument("NAUC must be >= 0");
  return ops_auc(kind, observed_nauc * ideal_auc(kind, pi), pi, cfg);
}

/// Error rates at x = u, linearly interpolated between the two curve points
/// whose x-coordinates bracket u. When several points share x = u, the
/// first in curve order (strictest threshold) is returned.
inline ErrorPair interpolate_errors(std::span<const ErrorPair> points,
                                    double pi, CurveKind kind, double u) {
  if (points.empty()) throw std::invalid_argument("curve has no points");
  if (kind == CurveKind::Lift && !(u > 0.0)) {
    throw std::domain_error("lift is undefined at x = 0");
  }
  auto x_of = [&](const ErrorPair& p) {
    return curve_x(kind, pi, p.alpha, p.beta);
  };
  const double x_first = x_of(points.front());
  const double x_last = x_of(points.back());
  if (!(u >= x_first - detail::kRangeSlack && u <= x_last + detail::kRangeSlack)) {
    throw std::out_of_range("query lies outside the curve's x-range");
  }
  // x is non-decreasing along any well-formed curve.
  const auto right = std::partition_point(
      points.begin(), points.end(),
      [&](const ErrorPair& p) { return x_of(p) < u; });
  if (right == points.end()) return points.back();
  const double x_right = x_of(*right);
  if (x_right == u || right == points.begin()) return *right;
  const ErrorPair& l = *(right - 1);
  const ErrorPair& r = *right;
  const double x_left = x_of(l);
  const double t = (u - x_left) / (x_right - x_left);
  return {l.alpha + (r.alpha - l.alpha) * t, l.beta + (r.beta - l.beta) * t};
}

inline ErrorPair interpolate_errors(const PerformanceCurve& curve,
                                    CurveKind kind, double u) {
  return interpolate_errors(curve.points, curve.pi, kind, u);
}

/// y-value of every pool curve at x = u, sorted ascending.
inline std::vector<double> reference_point_values(CurveKind kind, double u,
                                                  double pi,
                                                  const ScoringOpsConfig& cfg) {
  const DbtPool& pool = detail::require_pool(cfg);
  if (!(pi > 0.0 && pi < 1.0)) {
    throw DegeneratePrevalence("prevalence must lie strictly inside (0, 1)");
  }
  const auto order = in_order_indices(pool.depth);
  std::vector<double> values(pool.size());
  parallel_for_chunks(pool.size(), cfg.threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<ErrorPair> points;
    for (std::size_t g = lo; g < hi; ++g) {
      const DbtSample& s = pool.samples[g];
      points.clear();
      points.push_back({0.0, 1.0});
      for (std::size_t idx : order) points.push_back({s.alphas[idx], s.betas[idx]});
      points.push_back({1.0, 0.0});
      const ErrorPair at = interpolate_errors(points, pi, kind, u);
      values[g] = curve_y(kind, pi, at.alpha, at.beta);
    }
  });
  std::sort(values.begin(), values.end());
  return values;
}

/// Fraction of pool curves whose y at x = u is strictly below v.
inline double ops_point(CurveKind kind, double u, double v, double pi,
                        const ScoringOpsConfig& cfg) {
  return detail::fraction_below(reference_point_values(kind, u, pi, cfg), v);
}

struct OprcPoint {
  double recall;
  double nominal_precision;
  double o_value;
};

/// PRC with nominal precision replaced by its o-value at each grid recall.
/// Nominal precision is read off the empirical PRC with the same
/// interpolation used for pool curves. O-values condition on the test set's
/// prevalence unless `pi_override` is given.
inline std::vector<OprcPoint> oprc(const Predictions& preds,
                                   std::span<const double> recall_grid,
                                   const ScoringOpsConfig& cfg,
                                   std::optional<double> pi_override = {}) {
  const PerformanceCurve curve = curve_from_scores(preds, CurveKind::PRC);
  const double pi = pi_override.value_or(curve.pi);
  std::vector<OprcPoint> out;
  out.reserve(recall_grid.size());
  for (double u : recall_grid) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw std::invalid_argument("recall grid values must lie in [0, 1]");
    }
    const ErrorPair at = interpolate_errors(curve, CurveKind::PRC, u);
    const double nominal = precision(curve.pi, at.alpha, at.beta);
    out.push_back({u, nominal, ops_point(CurveKind::PRC, u, nominal, pi, cfg)});
  }
  return out;
}

}  // namespace ovalue
