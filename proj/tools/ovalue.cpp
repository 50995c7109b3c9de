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

// ovalue: o-values for classification metrics from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 data validation or I/O error,
// 3 degenerate prevalence (a test set with only one class).

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ovalue/ovalue.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kDegenerate = 3 };

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (auto field : ovalue::detail::split(text, ',')) {
    if (field.empty()) continue;
    const auto v = ovalue::detail::parse_double(field);
    if (!v) throw std::invalid_argument(std::string("bad value in ") + what + ": '" + std::string(field) + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  return out;
}

std::optional<char> parse_delimiter(const std::string& text) {
  if (text == "auto") return std::nullopt;
  if (text == "comma" || text == ",") return ',';
  if (text == "tab" || text == "\\t" || text == "\t") return '\t';
  throw std::invalid_argument("delimiter must be auto, comma or tab");
}

ovalue::LabelingMethod parse_method(const std::string& text) {
  if (text == "auto") return ovalue::LabelingMethod::Auto;
  if (text == "grid") return ovalue::LabelingMethod::Grid;
  if (text == "mc") return ovalue::LabelingMethod::MonteCarlo;
  throw std::invalid_argument("labeling method must be auto, grid or mc");
}

/// "lo:hi:count", or a default range covering the metric's values.
std::vector<double> parse_mu_grid(const std::string& text,
                                  const ovalue::MetricSpec& metric,
                                  const std::vector<double>& pis) {
  if (!text.empty()) {
    const auto parts = ovalue::detail::split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("--mu-grid must be lo:hi:count");
    const auto lo = ovalue::detail::parse_double(parts[0]);
    const auto hi = ovalue::detail::parse_double(parts[1]);
    const auto count = ovalue::detail::parse_double(parts[2]);
    if (!lo || !hi || !count || *count < 2 || *hi < *lo) {
      throw std::invalid_argument("--mu-grid must be lo:hi:count with count >= 2");
    }
    return ovalue::linspace(*lo, *hi, static_cast<std::size_t>(*count));
  }
  double lo = 0.0, hi = 1.0;
  if (metric.type == ovalue::MetricSpec::Type::Labeling) {
    lo = ovalue::codomain(metric.labeling).lower;
  } else if (metric.type == ovalue::MetricSpec::Type::Auc) {
    for (double pi : pis) hi = std::max(hi, ovalue::ideal_auc(metric.curve, pi));
  } else if (metric.type == ovalue::MetricSpec::Type::Point &&
             metric.curve == ovalue::CurveKind::Lift) {
    for (double pi : pis) hi = std::max(hi, 1.0 / pi);
  }
  return ovalue::linspace(lo, hi, 101);
}

struct CommonOptions {
  ovalue::EvaluationSettings settings;
  std::string format = "table";
  std::string delimiter = "auto";
  std::string pool_cache;
  std::string labeling_method = "auto";
  std::optional<double> pi_override;

  void attach(CLI::App& cmd) {
    cmd.add_option("--depth", settings.depth, "DBT depth (J = 2^(depth+1) - 1 points per curve)")
        ->capture_default_str()->check(CLI::Range(0, ovalue::kMaxDepth));
    cmd.add_option("--samples", settings.samples, "DBT pool size G, also the Monte Carlo sample count")
        ->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--seed", settings.seed, "seed of the reference stream")->capture_default_str();
    cmd.add_option("--grid", settings.grid, "labeling-metric integration grid (cells per axis)")
        ->capture_default_str()->check(CLI::Range(std::size_t{10}, std::size_t{100000}));
    cmd.add_option("--pi-override", pi_override, "condition o-values on this prevalence instead of the test set's")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--pool-cache", pool_cache, "DBT pool cache file (read if the key matches, else written)");
    cmd.add_option("--format", format, "output format")
        ->capture_default_str()->check(CLI::IsMember({"json", "csv", "table"}));
    cmd.add_option("--delimiter", delimiter, "input delimiter: auto, comma or tab")->capture_default_str();
    cmd.add_option("--labeling-method", labeling_method, "auto (f1 closed form, grid otherwise), grid or mc")
        ->capture_default_str();
    cmd.add_option("--threads", settings.threads, "worker threads (results do not depend on it)")
        ->capture_default_str()->check(CLI::Range(1u, 256u));
  }

  void finish() {
    settings.pi_override = pi_override;
    if (!pool_cache.empty()) settings.pool_cache = pool_cache;
    settings.labeling_method = parse_method(labeling_method);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outperformance-standardized values (o-values) of classification metrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ovalue::kToolVersion));

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "report nominal metrics with their o-values");
  CommonOptions eval_opts;
  std::vector<std::string> inputs, names;
  std::vector<std::pair<std::string, std::string>> compare_pairs;
  std::string metrics = "f1,mcc,auc:prc,point:prc@0.9";
  eval_opts.attach(*eval);
  eval->add_option("--input", inputs, "prediction file (columns label, score)");
  eval->add_option("--name", names, "display name for the matching --input");
  eval->add_option("--compare", compare_pairs, "additional test set as PATH NAME (repeatable)");
  eval->add_option("--metrics", metrics,
                   "comma list of recall, precision, f1, mcc, auc:<kind>, nauc:<kind>, point:<kind>@<x>")
      ->capture_default_str();
  eval->add_option("--threshold", eval_opts.settings.threshold, "labeling threshold (score >= t is positive)")
      ->capture_default_str();

  // ops-curve
  auto* curve = app.add_subcommand("ops-curve", "emit OPS function series for plotting");
  CommonOptions curve_opts;
  std::string curve_metric = "f1", pi_list = "0.1,0.3,0.5", mu_grid;
  curve_opts.format = "csv";
  curve_opts.attach(*curve);
  curve->add_option("--metric", curve_metric, "metric, same syntax as one evaluate --metrics entry")->capture_default_str();
  curve->add_option("--pi", pi_list, "comma list of prevalence rates")->capture_default_str();
  curve->add_option("--mu-grid", mu_grid, "lo:hi:count (default spans the metric's range, 101 points)");

  // oprc
  auto* oprc_cmd = app.add_subcommand("oprc", "emit the PRC and its o-value-standardized version");
  CommonOptions oprc_opts;
  std::string oprc_input, recall_grid;
  oprc_opts.format = "csv";
  oprc_opts.attach(*oprc_cmd);
  oprc_cmd->add_option("--input", oprc_input, "prediction file")->required();
  oprc_cmd->add_option("--recall-grid", recall_grid, "comma list of recall levels (default 0.05..0.95)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eval->parsed()) {
      eval_opts.finish();
      if (inputs.empty() && compare_pairs.empty()) {
        throw std::invalid_argument("evaluate needs --input or --compare");
      }
      if (names.size() > inputs.size()) throw std::invalid_argument("more --name than --input values");
      ovalue::EvaluationRequest req{ovalue::parse_metrics(metrics), eval_opts.settings};
      const auto delim = parse_delimiter(eval_opts.delimiter);
      std::vector<ovalue::NamedPredictions> sets;
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        const std::string name = i < names.size() ? names[i] : inputs[i];
        sets.push_back({name, ovalue::load_predictions(inputs[i], delim)});
      }
      for (const auto& [path, name] : compare_pairs) {
        sets.push_back({name, ovalue::load_predictions(path, delim)});
      }
      const auto report = sets.size() == 1 ? ovalue::evaluate(sets.front(), req)
                                           : ovalue::compare(sets, req);
      std::cout << ovalue::render(report, ovalue::parse_format(eval_opts.format));
    } else if (curve->parsed()) {
      curve_opts.finish();
      const auto metric = ovalue::parse_metric(curve_metric);
      const auto pis = parse_list(pi_list, "--pi");
      const auto mus = parse_mu_grid(mu_grid, metric, pis);
      const auto pool = ovalue::pool_for(curve_opts.settings);
      const auto series = ovalue::emit_ops_curve(metric, pis, mus, curve_opts.settings, pool);
      std::cout << ovalue::render_ops_curve(metric.name, series,
                                            ovalue::parse_format(curve_opts.format));
    } else if (oprc_cmd->parsed()) {
      oprc_opts.finish();
      const auto preds = ovalue::load_predictions(oprc_input, parse_delimiter(oprc_opts.delimiter));
      const auto grid = recall_grid.empty() ? ovalue::default_recall_grid()
                                            : parse_list(recall_grid, "--recall-grid");
      const auto pool = ovalue::pool_for(oprc_opts.settings);
      const ovalue::ScoringOpsConfig cfg{&pool, oprc_opts.settings.threads, nullptr};
      const auto series = ovalue::emit_oprc(preds, grid, cfg, oprc_opts.settings.pi_override);
      std::cout << ovalue::render_oprc(series, ovalue::parse_format(oprc_opts.format));
    }
  } catch (const ovalue::DegeneratePrevalence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const ovalue::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
