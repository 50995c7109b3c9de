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

// Directed Binary Tree (DBT) reference distribution over threshold-swept
// error sequences.
//
// Nodes are stored breadth-first: node i has children 2i+1 (left) and 2i+2
// (right). The root draws (alpha, beta) uniformly on the unit square. Every
// node owns an alpha interval and a beta interval; its left child draws
// alpha from the part of the alpha interval below the parent and beta from
// the part of the beta interval above the parent, the right child the
// opposite. An in-order walk therefore visits alpha ascending with beta
// descending, which is the ordering any threshold sweep produces.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ovalue/metrics.hpp"
#include "ovalue/rng.hpp"

namespace ovalue {

inline constexpr int kDefaultDepth = 6;
inline constexpr int kMaxDepth = 24;
inline constexpr std::size_t kDefaultPoolSize = 10000;

inline std::size_t dbt_node_count(int depth) {
  if (depth < 0 || depth > kMaxDepth) {
    throw std::invalid_argument("DBT depth must be in [0, " +
                                std::to_string(kMaxDepth) + "]");
  }
  return (std::size_t{1} << (depth + 1)) - 1;
}

struct DbtSample {
  int depth = 0;
  std::vector<double> alphas;  // breadth-first node order
  std::vector<double> betas;

  std::size_t size() const { return alphas.size(); }
  bool operator==(const DbtSample&) const = default;
};

/// Breadth-first node indices listed in in-order (left, node, right).
inline std::vector<std::size_t> in_order_indices(int depth) {
  const std::size_t count = dbt_node_count(depth);
  std::vector<std::size_t> order;
  order.reserve(count);
  std::vector<std::size_t> stack;
  std::size_t node = 0;
  while (node < count || !stack.empty()) {
    while (node < count) {
      stack.push_back(node);
      node = 2 * node + 1;
    }
    node = stack.back();
    stack.pop_back();
    order.push_back(node);
    node = 2 * node + 2;
  }
  return order;
}

inline DbtSample sample_dbt(int depth, Engine& rng) {
  const std::size_t count = dbt_node_count(depth);
  DbtSample s;
  s.depth = depth;
  s.alphas.resize(count);
  s.betas.resize(count);
  // Per-node sampling intervals, filled as parents are drawn.
  std::vector<double> alpha_lo(count, 0.0), alpha_hi(count, 1.0);
  std::vector<double> beta_lo(count, 0.0), beta_hi(count, 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = uniform(rng, alpha_lo[i], alpha_hi[i]);
    const double b = uniform(rng, beta_lo[i], beta_hi[i]);
    s.alphas[i] = a;
    s.betas[i] = b;
    const std::size_t left = 2 * i + 1;
    const std::size_t right = 2 * i + 2;
    if (left < count) {
      alpha_lo[left] = alpha_lo[i];
      alpha_hi[left] = a;
      beta_lo[left] = b;
      beta_hi[left] = beta_hi[i];
    }
    if (right < count) {
      alpha_lo[right] = a;
      alpha_hi[right] = alpha_hi[i];
      beta_lo[right] = beta_lo[i];
      beta_hi[right] = b;
    }
  }
  return s;
}

/// G samples drawn sequentially from one engine seeded with `seed`.
struct DbtPool {
  int depth = kDefaultDepth;
  std::uint64_t seed = 0;
  std::string rng_id{kRngId};
  std::vector<DbtSample> samples;

  std::size_t size() const { return samples.size(); }
  bool operator==(const DbtPool&) const = default;
};

inline DbtPool build_pool(int depth, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("pool needs at least one sample");
  dbt_node_count(depth);
  DbtPool pool;
  pool.depth = depth;
  pool.seed = seed;
  pool.samples.reserve(count);
  Engine rng(seed);
  for (std::size_t g = 0; g < count; ++g) {
    pool.samples.push_back(sample_dbt(depth, rng));
  }
  return pool;
}

/// FNV-1a over the pool key and the bit patterns of every sampled value.
inline std::uint64_t pool_fingerprint(const DbtPool& pool) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (word >> (8 * byte)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (char c : pool.rng_id) mix(static_cast<unsigned char>(c));
  mix(pool.seed);
  mix(static_cast<std::uint64_t>(pool.depth));
  mix(pool.samples.size());
  for (const auto& s : pool.samples) {
    for (double a : s.alphas) mix(std::bit_cast<std::uint64_t>(a));
    for (double b : s.betas) mix(std::bit_cast<std::uint64_t>(b));
  }
  return h;
}

/// Anchored curve: (0, 1), the nodes in in-order, then (1, 0).
inline PerformanceCurve sample_to_curve(const DbtSample& s, double pi,
                                        CurveKind kind,
                                        const std::vector<std::size_t>& order) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw DegeneratePrevalence("prevalence must lie strictly inside (0, 1)");
  }
  if (order.size() != s.size()) {
    throw std::invalid_argument("traversal order does not match sample size");
  }
  PerformanceCurve curve;
  curve.pi = pi;
  curve.kind = kind;
  curve.points.reserve(s.size() + 2);
  curve.points.push_back({0.0, 1.0});
  for (std::size_t idx : order) curve.points.push_back({s.alphas[idx], s.betas[idx]});
  curve.points.push_back({1.0, 0.0});
  return curve;
}

inline PerformanceCurve sample_to_curve(const DbtSample& s, double pi,
                                        CurveKind kind) {
  return sample_to_curve(s, pi, kind, in_order_indices(s.depth));
}

}  // namespace ovalue
