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

// O-values of labeling metrics under independent uniform Type-I and
// Type-II errors: OPS(mu; pi) = Pr{ M(pi, A, B) < mu }, A, B ~ Unif[0, 1].

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ovalue/metrics.hpp"
#include "ovalue/parallel.hpp"
#include "ovalue/rng.hpp"

namespace ovalue {

struct LabelingOpsConfig {
  std::size_t grid_resolution = 2000;  // cells per axis
  std::size_t mc_samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
};

inline void validate(const LabelingOpsConfig& cfg) {
  if (cfg.grid_resolution < 10) {
    throw std::invalid_argument("grid resolution must be at least 10");
  }
  if (cfg.mc_samples < 1) {
    throw std::invalid_argument("at least one Monte Carlo sample is required");
  }
}

namespace detail {

inline void require_prevalence(double pi) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw DegeneratePrevalence("prevalence must lie strictly inside (0, 1)");
  }
}

}  // namespace detail

/// Closed-form OPS of the f1 score. Below the trivial-positive-classifier
/// value 2pi/(1+pi) the region {f1 < mu} is a triangle cut by the line
/// f1 = mu; above it the triangle is clipped at alpha = 1.
inline double ops_f1_closed(double mu, double pi) {
  detail::require_prevalence(pi);
  if (mu <= 0.0) return 0.0;
  if (mu >= 1.0) return 1.0;
  const double base = (1.0 + pi) * mu / (2.0 * pi * (2.0 - mu));
  if (mu <= 2.0 * pi / (1.0 + pi)) return base;
  const double excess = (1.0 + pi) * mu - 2.0 * pi;
  return base - excess * excess / (2.0 * pi * (1.0 - pi) * mu * (2.0 - mu));
}

/// Midpoint-rule estimate of the area of {(alpha, beta) : metric < mu} on a
/// resolution x resolution lattice of cell centres. `metric` is any
/// callable (alpha, beta) -> double at the prevalence of interest.
template <typename Metric>
double ops_grid(Metric&& metric, double mu, std::size_t resolution,
                unsigned threads = 1) {
  if (resolution == 0) throw std::invalid_argument("empty grid");
  const double step = 1.0 / static_cast<double>(resolution);
  std::vector<std::size_t> row_counts(resolution, 0);
  parallel_for_chunks(resolution, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      const double beta = (static_cast<double>(j) + 0.5) * step;
      std::size_t count = 0;
      for (std::size_t i = 0; i < resolution; ++i) {
        const double alpha = (static_cast<double>(i) + 0.5) * step;
        count += metric(alpha, beta) < mu ? 1 : 0;
      }
      row_counts[j] = count;
    }
  });
  std::size_t below = 0;
  for (std::size_t c : row_counts) below += c;
  return static_cast<double>(below) /
         (static_cast<double>(resolution) * static_cast<double>(resolution));
}

inline double ops_labeling_grid(LabelingMetric metric, double mu, double pi,
                                const LabelingOpsConfig& cfg = {}) {
  validate(cfg);
  detail::require_prevalence(pi);
  const Codomain range = codomain(metric);
  if (mu <= range.lower) return 0.0;
  if (mu > range.upper) return 1.0;
  return ops_grid(
      [&](double a, double b) { return eval_labeling(metric, pi, a, b); }, mu,
      cfg.grid_resolution, cfg.threads);
}

/// A reusable block of iid (alpha, beta) ~ Unif[0,1]^2 draws. Each draw
/// takes alpha first, then beta, from one seeded stream.
struct UniformDraws {
  std::uint64_t seed = kDefaultSeed;
  std::vector<ErrorPair> pairs;
};

inline UniformDraws uniform_draws(std::size_t count, std::uint64_t seed) {
  UniformDraws draws{seed, {}};
  draws.pairs.reserve(count);
  Engine rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double alpha = uniform01(rng);
    const double beta = uniform01(rng);
    draws.pairs.push_back({alpha, beta});
  }
  return draws;
}

/// Fraction of draws with metric(alpha, beta) < mu (ties are not counted).
template <typename Metric>
double ops_mc(Metric&& metric, double mu, const UniformDraws& draws,
              unsigned threads = 1) {
  if (draws.pairs.empty()) throw std::invalid_argument("no draws");
  const std::size_t below =
      parallel_count(draws.pairs.size(), threads, [&](std::size_t i) {
        return metric(draws.pairs[i].alpha, draws.pairs[i].beta) < mu;
      });
  return static_cast<double>(below) / static_cast<double>(draws.pairs.size());
}

inline double ops_labeling_mc(LabelingMetric metric, double mu, double pi,
                              const UniformDraws& draws, unsigned threads = 1) {
  detail::require_prevalence(pi);
  const Codomain range = codomain(metric);
  if (mu <= range.lower) return 0.0;
  if (mu > range.upper) return 1.0;
  return ops_mc(
      [&](double a, double b) { return eval_labeling(metric, pi, a, b); }, mu,
      draws, threads);
}

inline double ops_labeling_mc(LabelingMetric metric, double mu, double pi,
                              const LabelingOpsConfig& cfg = {}) {
  validate(cfg);
  return ops_labeling_mc(metric, mu, pi, uniform_draws(cfg.mc_samples, cfg.seed),
                         cfg.threads);
}

}  // namespace ovalue
