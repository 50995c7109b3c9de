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

// Evaluation requests, "nominal (o-value)" reports and plot-ready series.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ovalue/confusion.hpp"
#include "ovalue/dbt.hpp"
#include "ovalue/io.hpp"
#include "ovalue/metrics.hpp"
#include "ovalue/ops_labeling.hpp"
#include "ovalue/ops_scoring.hpp"
#include "ovalue/pool_cache.hpp"

namespace ovalue {

inline constexpr std::string_view kToolVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Metric selection

struct MetricSpec {
  enum class Type { Labeling, Auc, Nauc, Point };

  Type type = Type::Labeling;
  LabelingMetric labeling = LabelingMetric::F1;
  CurveKind curve = CurveKind::PRC;
  double at = 0.0;   // x-coordinate for Type::Point
  std::string name;  // canonical spelling, e.g. "point:prc@0.9"
};

inline CurveKind parse_curve_kind(std::string_view text) {
  if (text == "roc") return CurveKind::ROC;
  if (text == "prc") return CurveKind::PRC;
  if (text == "lift") return CurveKind::Lift;
  if (text == "gain") return CurveKind::Gain;
  throw std::invalid_argument("unknown curve kind '" + std::string(text) + "'");
}

/// Accepts recall, precision, f1, mcc, auc:<kind>, nauc:<kind> and
/// point:<kind>@<x>.
inline MetricSpec parse_metric(std::string_view text) {
  MetricSpec spec;
  spec.name = std::string(text);
  if (text == "recall" || text == "precision" || text == "f1" || text == "mcc") {
    spec.type = MetricSpec::Type::Labeling;
    spec.labeling = text == "recall"      ? LabelingMetric::Recall
                    : text == "precision" ? LabelingMetric::Precision
                    : text == "f1"        ? LabelingMetric::F1
                                          : LabelingMetric::MCC;
    return spec;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
  }
  const auto family = text.substr(0, colon);
  auto rest = text.substr(colon + 1);
  if (family == "auc" || family == "nauc") {
    spec.type = family == "auc" ? MetricSpec::Type::Auc : MetricSpec::Type::Nauc;
    spec.curve = parse_curve_kind(rest);
    return spec;
  }
  if (family == "point") {
    const auto at = rest.find('@');
    if (at == std::string_view::npos) {
      throw std::invalid_argument("point metric needs '@<x>': '" +
                                  std::string(text) + "'");
    }
    spec.type = MetricSpec::Type::Point;
    spec.curve = parse_curve_kind(rest.substr(0, at));
    const auto x = detail::parse_double(rest.substr(at + 1));
    if (!x || !(*x >= 0.0 && *x <= 1.0)) {
      throw std::invalid_argument("point metric x must lie in [0, 1]: '" +
                                  std::string(text) + "'");
    }
    if (spec.curve == CurveKind::Lift && *x == 0.0) {
      throw std::invalid_argument("lift is undefined at x = 0");
    }
    spec.at = *x;
    return spec;
  }
  throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

inline std::vector<MetricSpec> parse_metrics(std::string_view list) {
  std::vector<MetricSpec> specs;
  for (auto field : detail::split(list, ',')) {
    if (!field.empty()) specs.push_back(parse_metric(field));
  }
  if (specs.empty()) throw std::invalid_argument("no metrics selected");
  return specs;
}

// ---------------------------------------------------------------------------
// Requests and reports

enum class LabelingMethod { Auto, Grid, MonteCarlo };

struct EvaluationSettings {
  double threshold = 0.5;
  std::optional<double> pi_override;
  int depth = kDefaultDepth;
  std::size_t samples = kDefaultPoolSize;
  std::uint64_t seed = kDefaultSeed;
  std::size_t grid = 2000;
  LabelingMethod labeling_method = LabelingMethod::Auto;
  unsigned threads = 1;  // never affects results
  std::optional<std::filesystem::path> pool_cache;
};

struct EvaluationRequest {
  std::vector<MetricSpec> metrics;
  EvaluationSettings settings;
};

struct NamedPredictions {
  std::string name;
  Predictions preds;
};

struct MetricResult {
  std::string metric;
  double nominal = 0.0;
  double o_value = 0.0;
  std::string method;  // closed, grid, mc or dbt
};

struct TestSetResult {
  std::string name;
  std::size_t n = 0;
  double pi = 0.0;
  std::optional<double> pi_override;
  std::uint64_t pool_hash = 0;
  std::vector<MetricResult> metrics;
};

struct OValueReport {
  EvaluationSettings settings;
  std::string rng_id{kRngId};
  std::vector<TestSetResult> testsets;
};

inline void validate(const EvaluationRequest& req) {
  if (req.metrics.empty()) throw std::invalid_argument("no metrics selected");
  const auto& s = req.settings;
  if (!std::isfinite(s.threshold)) {
    throw std::invalid_argument("threshold must be finite");
  }
  if (s.pi_override && !(*s.pi_override > 0.0 && *s.pi_override < 1.0)) {
    throw std::invalid_argument("prevalence override must lie in (0, 1)");
  }
  if (s.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (s.grid < 10) throw std::invalid_argument("grid must be >= 10");
  dbt_node_count(s.depth);
}

/// The DBT pool a request uses: loaded from or written to the cache file
/// when one is configured.
inline DbtPool pool_for(const EvaluationSettings& s) {
  if (s.pool_cache) return load_or_build_pool(*s.pool_cache, s.depth, s.samples, s.seed);
  return build_pool(s.depth, s.samples, s.seed);
}

inline TestSetResult evaluate_set(const NamedPredictions& set,
                                  const EvaluationRequest& req,
                                  const DbtPool& pool, AucCache* cache) {
  validate(req);
  const auto& s = req.settings;
  const std::size_t positives = set.preds.count_positives();
  if (positives == 0 || positives == set.preds.size()) {
    throw DegeneratePrevalence("test set '" + set.name +
                               "' contains only one class");
  }

  TestSetResult out;
  out.name = set.name;
  out.n = set.preds.size();
  out.pi = static_cast<double>(positives) / static_cast<double>(out.n);
  out.pi_override = s.pi_override;
  out.pool_hash = pool_fingerprint(pool);
  const double pi = s.pi_override.value_or(out.pi);

  const LabelingOpsConfig lcfg{s.grid, s.samples, s.seed, s.threads};
  const ScoringOpsConfig scfg{&pool, s.threads, cache};
  std::optional<UniformDraws> draws;
  std::optional<Rates> rates;
  std::optional<PerformanceCurve> curve;  // kind is set per metric

  for (const auto& m : req.metrics) {
    MetricResult r;
    r.metric = m.name;
    switch (m.type) {
      case MetricSpec::Type::Labeling: {
        if (!rates) rates = rates_from_confusion(confusion_at_threshold(set.preds, s.threshold));
        r.nominal = eval_labeling(m.labeling, *rates);
        const bool closed = m.labeling == LabelingMetric::F1 &&
                            s.labeling_method == LabelingMethod::Auto;
        if (closed) {
          r.o_value = ops_f1_closed(r.nominal, pi);
          r.method = "closed";
        } else if (s.labeling_method == LabelingMethod::MonteCarlo) {
          if (!draws) draws = uniform_draws(s.samples, s.seed);
          r.o_value = ops_labeling_mc(m.labeling, r.nominal, pi, *draws, s.threads);
          r.method = "mc";
        } else {
          r.o_value = ops_labeling_grid(m.labeling, r.nominal, pi, lcfg);
          r.method = "grid";
        }
        break;
      }
      case MetricSpec::Type::Auc:
      case MetricSpec::Type::Nauc: {
        if (!curve) curve = curve_from_scores(set.preds, m.curve);
        const double area = auc(curve_points(m.curve, *curve));
        if (m.type == MetricSpec::Type::Auc) {
          r.nominal = area;
          r.o_value = ops_auc(m.curve, area, pi, scfg);
        } else {
          r.nominal = nauc(area, m.curve, out.pi);
          r.o_value = ops_nauc(m.curve, r.nominal, pi, scfg);
        }
        r.method = "dbt";
        break;
      }
      case MetricSpec::Type::Point: {
        if (!curve) curve = curve_from_scores(set.preds, m.curve);
        const ErrorPair at = interpolate_errors(*curve, m.curve, m.at);
        r.nominal = curve_y(m.curve, out.pi, at.alpha, at.beta);
        r.o_value = ops_point(m.curve, m.at, r.nominal, pi, scfg);
        r.method = "dbt";
        break;
      }
    }
    out.metrics.push_back(std::move(r));
  }
  return out;
}

inline OValueReport evaluate(const NamedPredictions& set,
                             const EvaluationRequest& req) {
  validate(req);
  const DbtPool pool = pool_for(req.settings);
  AucCache cache;
  OValueReport report{req.settings, std::string(kRngId), {}};
  report.testsets.push_back(evaluate_set(set, req, pool, &cache));
  return report;
}

/// Evaluates every set against one shared pool and grid, preserving input
/// order.
inline OValueReport compare(const std::vector<NamedPredictions>& sets,
                            const EvaluationRequest& req) {
  if (sets.size() < 2) {
    throw std::invalid_argument("comparison needs at least two test sets");
  }
  validate(req);
  const DbtPool pool = pool_for(req.settings);
  AucCache cache;
  OValueReport report{req.settings, std::string(kRngId), {}};
  for (const auto& set : sets) {
    report.testsets.push_back(evaluate_set(set, req, pool, &cache));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering

enum class OutputFormat { Json, Csv, Table };

inline OutputFormat parse_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  throw std::invalid_argument("unknown output format '" + std::string(text) + "'");
}

inline std::string_view to_string(LabelingMethod m) {
  switch (m) {
    case LabelingMethod::Auto: return "auto";
    case LabelingMethod::Grid: return "grid";
    case LabelingMethod::MonteCarlo: return "mc";
  }
  return "?";
}

/// Two-decimal "nominal (o-value)" cell, e.g. "0.41 (0.89)".
inline std::string format_cell(double nominal, double o_value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f (%.2f)", nominal, o_value);
  return buf;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline nlohmann::ordered_json to_json(const OValueReport& report) {
  const auto& s = report.settings;
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["rng_id"] = report.rng_id;
  j["seed"] = s.seed;
  j["depth"] = s.depth;
  j["samples"] = s.samples;
  j["grid"] = s.grid;
  j["threshold"] = s.threshold;
  j["labeling_method"] = to_string(s.labeling_method);
  j["testsets"] = nlohmann::ordered_json::array();
  for (const auto& t : report.testsets) {
    nlohmann::ordered_json row;
    row["name"] = t.name;
    row["n"] = t.n;
    row["pi"] = t.pi;
    row["pi_override"] = t.pi_override ? nlohmann::ordered_json(*t.pi_override)
                                       : nlohmann::ordered_json(nullptr);
    row["pool_hash"] = hex64(t.pool_hash);
    row["metrics"] = nlohmann::ordered_json::array();
    for (const auto& m : t.metrics) {
      row["metrics"].push_back({{"metric", m.metric},
                                {"nominal", m.nominal},
                                {"o_value", m.o_value},
                                {"method", m.method},
                                {"cell", format_cell(m.nominal, m.o_value)}});
    }
    j["testsets"].push_back(std::move(row));
  }
  return j;
}

inline std::string render_csv(const OValueReport& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "testset,n,pi,metric,nominal,o_value,method\n";
  for (const auto& t : report.testsets) {
    for (const auto& m : t.metrics) {
      out << t.name << ',' << t.n << ',' << t.pi << ',' << m.metric << ','
          << m.nominal << ',' << m.o_value << ',' << m.method << '\n';
    }
  }
  return out.str();
}

/// Aligned table, one row per test set, one "nominal (o-value)" column per
/// metric.
inline std::string render_table(const OValueReport& report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"test set", "n", "pi"};
  if (!report.testsets.empty()) {
    for (const auto& m : report.testsets.front().metrics) header.push_back(m.metric);
  }
  rows.push_back(header);
  for (const auto& t : report.testsets) {
    char pi[32];
    std::snprintf(pi, sizeof pi, "%.2f", t.pi_override.value_or(t.pi));
    std::vector<std::string> row{t.name, std::to_string(t.n), pi};
    for (const auto& m : t.metrics) row.push_back(format_cell(m.nominal, m.o_value));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c > 0) out << "  ";
      out << (c == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[c]))
          << rows[r][c];
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

inline std::string render(const OValueReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return to_json(report).dump(2) + "\n";
    case OutputFormat::Csv: return render_csv(report);
    case OutputFormat::Table: return render_table(report);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Plot-ready series

struct OpsCurvePoint {
  double pi;
  double mu;
  double o_value;
};

/// OPS function of `metric` sampled at every (pi, mu) pair. Labeling
/// metrics use the f1 closed form or the grid; curve metrics use `pool`.
inline std::vector<OpsCurvePoint> emit_ops_curve(const MetricSpec& metric,
                                                 std::span<const double> pis,
                                                 std::span<const double> mus,
                                                 const EvaluationSettings& s,
                                                 const DbtPool& pool) {
  std::vector<OpsCurvePoint> out;
  out.reserve(pis.size() * mus.size());
  AucCache cache;
  const LabelingOpsConfig lcfg{s.grid, s.samples, s.seed, s.threads};
  const ScoringOpsConfig scfg{&pool, s.threads, &cache};
  for (double pi : pis) {
    if (!(pi > 0.0 && pi < 1.0)) {
      throw std::invalid_argument("prevalence values must lie in (0, 1)");
    }
    std::vector<double> point_values;
    if (metric.type == MetricSpec::Type::Point) {
      point_values = reference_point_values(metric.curve, metric.at, pi, scfg);
    }
    for (double mu : mus) {
      double o = 0.0;
      switch (metric.type) {
        case MetricSpec::Type::Labeling:
          o = (metric.labeling == LabelingMetric::F1 &&
               s.labeling_method == LabelingMethod::Auto)
                  ? ops_f1_closed(mu, pi)
                  : ops_labeling_grid(metric.labeling, mu, pi, lcfg);
          break;
        case MetricSpec::Type::Auc: o = ops_auc(metric.curve, mu, pi, scfg); break;
        case MetricSpec::Type::Nauc: o = ops_nauc(metric.curve, mu, pi, scfg); break;
        case MetricSpec::Type::Point: o = detail::fraction_below(point_values, mu); break;
      }
      out.push_back({pi, mu, o});
    }
  }
  return out;
}

inline std::string render_ops_curve(std::string_view metric,
                                    const std::vector<OpsCurvePoint>& series,
                                    OutputFormat format) {
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["metric"] = metric;
    j["series"] = nlohmann::ordered_json::array();
    for (const auto& p : series) {
      j["series"].push_back({{"pi", p.pi}, {"mu", p.mu}, {"o_value", p.o_value}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << std::setprecision(17) << "metric,pi,mu,o_value\n";
  for (const auto& p : series) {
    out << metric << ',' << p.pi << ',' << p.mu << ',' << p.o_value << '\n';
  }
  return out.str();
}

inline std::vector<OprcPoint> emit_oprc(const Predictions& preds,
                                        std::span<const double> recall_grid,
                                        const ScoringOpsConfig& cfg,
                                        std::optional<double> pi_override = {}) {
  return oprc(preds, recall_grid, cfg, pi_override);
}

/// Columns are recall, precision, o_value: the PRC and the OPRC side by side.
inline std::string render_oprc(const std::vector<OprcPoint>& series,
                               OutputFormat format) {
  if (format == OutputFormat::Json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& p : series) {
      j.push_back({{"recall", p.recall},
                   {"precision", p.nominal_precision},
                   {"o_value", p.o_value}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << std::setprecision(17) << "recall,precision,o_value\n";
  for (const auto& p : series) {
    out << p.recall << ',' << p.nominal_precision << ',' << p.o_value << '\n';
  }
  return out.str();
}

/// Evenly spaced values lo, lo+step, ..., hi (count >= 2).
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linspace needs at least two points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

/// Recall levels 0.05, 0.10, ..., 0.95.
inline std::vector<double> default_recall_grid() {
  std::vector<double> out;
  for (int i = 1; i <= 19; ++i) out.push_back(i / 20.0);
  return out;
}

}  // namespace ovalue
