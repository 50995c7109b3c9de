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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "ovalue/ovalue.hpp"

namespace {

using namespace ovalue;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1. f1 closed form against the midpoint grid.
Outcome closed_form_oracle() {
  const auto start = Clock::now();
  const LabelingOpsConfig cfg{2000, 1, 1, 1};
  double worst = 0;
  for (int i = 0; i <= 20; ++i) {
    for (int k = 1; k <= 9; ++k) {
      const double mu = i * 0.05, pi = k * 0.1;
      worst = std::max(worst, std::abs(ops_f1_closed(mu, pi) -
                                       ops_labeling_grid(LabelingMetric::F1, mu, pi, cfg)));
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-3 && secs < 30.0,
          fmt("max |closed - grid| = %.2e", worst) + fmt(", %.1f s", secs)};
}

// 2. Monte Carlo against the closed form within three binomial standard errors.
Outcome monte_carlo_consistency() {
  const auto start = Clock::now();
  const LabelingOpsConfig cfg{2000, 100000, 4242, 1};
  std::mt19937_64 rng(20260);
  std::uniform_real_distribution<double> mu_dist(0.02, 0.98), pi_dist(0.05, 0.95);
  const auto draws = uniform_draws(cfg.mc_samples, cfg.seed);
  double worst_ratio = 0;
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    const double mu = mu_dist(rng), pi = pi_dist(rng);
    const double p = ops_f1_closed(mu, pi);
    const double se = std::sqrt(p * (1 - p) / double(cfg.mc_samples));
    const double diff = std::abs(ops_labeling_mc(LabelingMetric::F1, mu, pi, draws) - p);
    ok = ok && diff <= 3 * se;
    worst_ratio = std::max(worst_ratio, diff / se);
  }
  const double secs = seconds_since(start);
  return {ok && secs < 10.0, fmt("worst deviation %.2f SE", worst_ratio) + fmt(", %.1f s", secs)};
}

// 3. Trivial positive classifier f1 and the ordering of o-values by prevalence.
Outcome trivial_classifier_values() {
  const double balanced = eval_labeling(LabelingMetric::F1, 0.5, 1.0, 0.0);
  const double rare = eval_labeling(LabelingMetric::F1, 0.1, 1.0, 0.0);
  const double o_rare = ops_f1_closed(0.6, 0.1), o_bal = ops_f1_closed(0.6, 0.5);
  const bool ok = std::abs(balanced - 0.6667) <= 1e-4 && std::abs(rare - 0.1818) <= 1e-4 &&
                  o_rare > o_bal;
  return {ok, fmt("f1(0.5)=%.4f", balanced) + fmt(" f1(0.1)=%.4f", rare) +
                  fmt(" OPS(0.6;0.1)=%.4f", o_rare) + fmt(" > OPS(0.6;0.5)=%.4f", o_bal)};
}

// 4. PRC o-values at pi = 0.1, with a depth sweep for sensitivity.
Outcome prc_example_values() {
  std::string detail;
  bool ok = true;
  for (int depth : {4, 6, 8}) {
    const auto pool = build_pool(depth, 10000, kDefaultSeed);
    const ScoringOpsConfig cfg{&pool, 1, nullptr};
    const double area = ops_auc(CurveKind::PRC, 0.6, 0.1, cfg);
    const double point = ops_point(CurveKind::PRC, 0.8, 0.5, 0.1, cfg);
    if (depth == 6) ok = area >= 0.93 && area <= 0.99 && point >= 0.94 && point <= 1.0;
    detail += "depth " + std::to_string(depth) + fmt(": AUC %.4f", area) +
              fmt(", P@R=0.8 %.4f", point) + (depth == 8 ? "" : "; ");
  }
  return {ok, detail};
}

// 5. Linear invariance, checked bit-for-bit on shared samples.
Outcome linear_invariance() {
  const auto pool = build_pool(kDefaultDepth, kDefaultPoolSize, kDefaultSeed);
  const ScoringOpsConfig cfg{&pool, 1, nullptr};
  std::size_t checks = 0, mismatches = 0;
  for (auto kind : {CurveKind::Gain, CurveKind::Lift}) {
    for (double pi : {0.1, 0.3, 0.5}) {
      for (double x : {0.2, 0.45, 0.6, 0.75, 0.9, 1.0}) {
        ++checks;
        mismatches += ops_nauc(kind, x, pi, cfg) != ops_auc(kind, x * ideal_auc(kind, pi), pi, cfg);
      }
    }
  }
  const auto draws = uniform_draws(100000, kDefaultSeed);
  for (double pi : {0.1, 0.3, 0.5}) {
    for (double v : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      ++checks;
      const double by_precision =
          ops_mc([pi](double a, double b) { return precision(pi, a, b); }, v, draws);
      const double by_lift =
          ops_mc([pi](double a, double b) { return precision(pi, a, b) / pi; }, v / pi, draws);
      mismatches += by_precision != by_lift;
    }
  }
  return {mismatches == 0,
          std::to_string(checks - mismatches) + "/" + std::to_string(checks) + " identical"};
}

// 6. DBT structure and bitwise regeneration.
bool subtree_ok(const DbtSample& s, std::size_t node, double alo, double ahi, double blo,
                double bhi) {
  if (node >= s.size()) return true;
  const double a = s.alphas[node], b = s.betas[node];
  if (!(a >= alo && a <= ahi && b >= blo && b <= bhi)) return false;
  return subtree_ok(s, 2 * node + 1, alo, a, b, bhi) &&
         subtree_ok(s, 2 * node + 2, a, ahi, blo, b);
}

Outcome dbt_structure() {
  const auto pool = build_pool(6, 10000, kDefaultSeed);
  const auto order = in_order_indices(6);
  std::size_t bad = 0;
  for (const auto& s : pool.samples) {
    bool ok = s.size() == 127 && subtree_ok(s, 0, 0.0, 1.0, 0.0, 1.0);
    for (std::size_t i = 1; ok && i < order.size(); ++i) {
      ok = s.alphas[order[i - 1]] < s.alphas[order[i]] && s.betas[order[i - 1]] > s.betas[order[i]];
    }
    bad += !ok;
  }
  std::stringstream buf;
  write_pool(buf, pool);
  const bool regenerates = build_pool(6, 10000, kDefaultSeed) == pool && read_pool(buf) == pool;
  return {bad == 0 && regenerates, std::to_string(pool.size() - bad) + "/10000 samples valid, " +
                                       (regenerates ? "bitwise regeneration ok" : "regeneration differs")};
}

// 7. O-values at a fixed nominal value fall as prevalence rises.
Outcome prevalence_monotonicity() {
  const auto pool = build_pool(kDefaultDepth, kDefaultPoolSize, kDefaultSeed);
  const ScoringOpsConfig cfg{&pool, 1, nullptr};
  std::vector<double> f1, prc;
  for (double pi : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    f1.push_back(ops_f1_closed(0.6, pi));
    prc.push_back(ops_auc(CurveKind::PRC, 0.6, pi, cfg));
  }
  auto strictly_decreasing = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::less_equal<>()) == v.end();
  };
  std::string detail = "f1:";
  for (double v : f1) detail += fmt(" %.3f", v);
  detail += "  auc(prc):";
  for (double v : prc) detail += fmt(" %.3f", v);
  return {strictly_decreasing(f1) && strictly_decreasing(prc), detail};
}

// 8. One scorer, three prevalences: nominal AUC(PRC) moves, o-values do not.
// The scorer is binormal (positives shifted by 1.2 standard deviations),
// which puts nominal AUC(PRC) near 0.3 at pi = 0.1.
Predictions resampled_set(double pi, std::uint64_t seed) {
  constexpr std::size_t n = 5000;
  constexpr double shift = 1.2;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto positives = static_cast<std::size_t>(std::llround(pi * n));
  Predictions p;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i < positives ? 1 : 0;
    p.labels.push_back(label);
    p.scores.push_back(noise(rng) + shift * label);
  }
  return p;
}

Outcome prevalence_shift_stability() {
  const auto pool = build_pool(kDefaultDepth, kDefaultPoolSize, kDefaultSeed);
  AucCache cache;
  const ScoringOpsConfig cfg{&pool, 1, &cache};
  std::vector<double> nominal, ovals;
  std::uint64_t seed = 8080;
  for (double pi : {0.1, 0.2, 0.3}) {
    const auto curve = curve_from_scores(resampled_set(pi, seed++), CurveKind::PRC);
    const double area = auc(curve_points(CurveKind::PRC, curve));
    nominal.push_back(area);
    ovals.push_back(ops_auc(CurveKind::PRC, area, curve.pi, cfg));
  }
  const auto [nmin, nmax] = std::minmax_element(nominal.begin(), nominal.end());
  const double mean = (ovals[0] + ovals[1] + ovals[2]) / 3;
  double max_dev = 0;
  for (double o : ovals) max_dev = std::max(max_dev, std::abs(o - mean));
  std::string detail = "nominal";
  for (double v : nominal) detail += fmt(" %.3f", v);
  detail += fmt(" (spread %.3f); o-values", *nmax - *nmin);
  for (double v : ovals) detail += fmt(" %.3f", v);
  detail += fmt(" (max |o - mean| %.3f)", max_dev);
  return {*nmax - *nmin > 0.15 && max_dev <= 0.05, detail};
}

// 9. Byte-identical structured reports and "nominal (o-value)" cells.
Outcome report_contract() {
  const NamedPredictions set{"golden", load_predictions(std::string(OVALUE_TEST_DATA) + "/golden.csv")};
  EvaluationRequest req{parse_metrics("f1,mcc,auc:prc,point:prc@0.9"), {}};
  req.settings.seed = 2026;
  const std::string a = render(evaluate(set, req), OutputFormat::Json);
  const std::string b = render(evaluate(set, req), OutputFormat::Json);
  req.settings.threads = 4;
  const std::string c = render(evaluate(set, req), OutputFormat::Json);
  const auto report = evaluate(set, req);
  const std::regex cell_shape(R"(-?\d\.\d\d \(\d\.\d\d\))");
  bool cells = format_cell(0.41, 0.89) == "0.41 (0.89)";
  for (const auto& m : report.testsets[0].metrics) {
    cells = cells && std::regex_match(format_cell(m.nominal, m.o_value), cell_shape) &&
            m.o_value >= 0.0 && m.o_value <= 1.0;
  }
  return {a == b && a == c && cells,
          std::string(a == b ? "runs identical" : "runs differ") + ", " +
              (a == c ? "threads identical" : "threads differ") + ", " +
              (cells ? "cells ok" : "cells malformed")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"closed-form f1 vs grid", closed_form_oracle},
      {"Monte Carlo vs closed form", monte_carlo_consistency},
      {"trivial positive classifier", trivial_classifier_values},
      {"PRC o-values at pi=0.1", prc_example_values},
      {"linear invariance", linear_invariance},
      {"DBT structure and regeneration", dbt_structure},
      {"prevalence monotonicity", prevalence_monotonicity},
      {"prevalence-shift stability", prevalence_shift_stability},
      {"report contract", report_contract},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += !out.pass;
    std::printf("%s [%d] %s: %s\n", out.pass ? "PASS" : "FAIL", index, c.name, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
