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

// Labeling metrics and scoring curves expressed in (pi, alpha, beta).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ovalue/confusion.hpp"

namespace ovalue {

enum class LabelingMetric { Recall, Precision, F1, MCC };

enum class CurveKind { ROC, PRC, Lift, Gain };

struct Codomain {
  double lower;
  double upper;
};

inline constexpr Codomain codomain(LabelingMetric metric) {
  return metric == LabelingMetric::MCC ? Codomain{-1.0, 1.0}
                                       : Codomain{0.0, 1.0};
}

inline std::string_view to_string(LabelingMetric metric) {
  switch (metric) {
    case LabelingMetric::Recall: return "recall";
    case LabelingMetric::Precision: return "precision";
    case LabelingMetric::F1: return "f1";
    case LabelingMetric::MCC: return "mcc";
  }
  return "?";
}

inline std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::ROC: return "roc";
    case CurveKind::PRC: return "prc";
    case CurveKind::Lift: return "lift";
    case CurveKind::Gain: return "gain";
  }
  return "?";
}

/// Precision with zero predicted positives is taken as 1, the usual
/// limit at the start of a precision-recall curve.
inline double precision(double pi, double alpha, double beta) {
  const double hits = pi * (1.0 - beta);
  const double predicted = hits + (1.0 - pi) * alpha;
  return predicted > 0.0 ? hits / predicted : 1.0;
}

inline double f1_score(double pi, double alpha, double beta) {
  return 2.0 * pi * (1.0 - beta) / (pi * (2.0 - beta) + (1.0 - pi) * alpha);
}

/// Zero denominator (a constant classifier) yields 0. The two factors under
/// the root are the predicted-positive and predicted-negative rates.
inline double mcc(double pi, double alpha, double beta) {
  const double predicted_pos = pi * (1.0 - beta) + (1.0 - pi) * alpha;
  const double predicted_neg = pi * beta + (1.0 - pi) * (1.0 - alpha);
  const double product = predicted_pos * predicted_neg;
  if (!(product > 0.0)) return 0.0;
  return (1.0 - alpha - beta) * std::sqrt(pi * (1.0 - pi) / product);
}

inline double eval_labeling(LabelingMetric metric, double pi, double alpha,
                            double beta) {
  switch (metric) {
    case LabelingMetric::Recall: return 1.0 - beta;
    case LabelingMetric::Precision: return precision(pi, alpha, beta);
    case LabelingMetric::F1: return f1_score(pi, alpha, beta);
    case LabelingMetric::MCC: return mcc(pi, alpha, beta);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline double eval_labeling(LabelingMetric metric, const Rates& r) {
  validate(r);
  return eval_labeling(metric, r.pi, r.alpha, r.beta);
}

// ---------------------------------------------------------------------------
// Scoring curves

/// Fraction of instances predicted positive.
inline double positive_fraction(double pi, double alpha, double beta) {
  return pi * (1.0 - beta) + (1.0 - pi) * alpha;
}

inline double curve_x(CurveKind kind, double pi, double alpha, double beta) {
  switch (kind) {
    case CurveKind::ROC: return alpha;
    case CurveKind::PRC: return 1.0 - beta;
    case CurveKind::Lift:
    case CurveKind::Gain: return positive_fraction(pi, alpha, beta);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// Lift is undefined (infinite) where nothing is predicted positive.
inline double curve_y(CurveKind kind, double pi, double alpha, double beta) {
  switch (kind) {
    case CurveKind::ROC:
    case CurveKind::Gain: return 1.0 - beta;
    case CurveKind::PRC: return precision(pi, alpha, beta);
    case CurveKind::Lift: {
      const double x = positive_fraction(pi, alpha, beta);
      return x > 0.0 ? (1.0 - beta) / x
                     : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline double ideal_auc(CurveKind kind, double pi) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw DegeneratePrevalence("prevalence must lie strictly inside (0, 1)");
  }
  switch (kind) {
    case CurveKind::ROC:
    case CurveKind::PRC: return 1.0;
    case CurveKind::Lift: return 1.0 - std::log(pi);
    case CurveKind::Gain: return 1.0 - pi / 2.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline double nauc(double auc_value, CurveKind kind, double pi) {
  if (!(auc_value >= 0.0)) throw std::invalid_argument("AUC must be >= 0");
  return auc_value / ideal_auc(kind, pi);
}

struct ErrorPair {
  double alpha;
  double beta;

  bool operator==(const ErrorPair&) const = default;
};

struct Point {
  double x;
  double y;

  bool operator==(const Point&) const = default;
};

/// Threshold-swept (alpha, beta) pairs ordered from the strictest threshold
/// (alpha = 0, beta = 1) to the loosest (alpha = 1, beta = 0).
struct PerformanceCurve {
  double pi = 0.5;
  std::vector<ErrorPair> points;
  CurveKind kind = CurveKind::ROC;
};

/// Checks alpha ascending with beta non-increasing and both anchors present.
inline bool is_well_formed(const PerformanceCurve& curve) {
  if (!(curve.pi > 0.0 && curve.pi < 1.0) || curve.points.size() < 2) {
    return false;
  }
  const auto& pts = curve.points;
  if (pts.front() != ErrorPair{0.0, 1.0} || pts.back() != ErrorPair{1.0, 0.0}) {
    return false;
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].alpha < pts[i - 1].alpha || pts[i].beta > pts[i - 1].beta) {
      return false;
    }
  }
  return true;
}

/// Maps each (alpha, beta) to (x, y) under `kind`. Lift points at x = 0
/// are dropped. Output is ordered by x; ties keep curve order.
inline std::vector<Point> curve_points(CurveKind kind,
                                       const PerformanceCurve& curve) {
  std::vector<Point> out;
  out.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    const double x = curve_x(kind, curve.pi, p.alpha, p.beta);
    if (kind == CurveKind::Lift && !(x > 0.0)) continue;
    out.push_back({x, curve_y(kind, curve.pi, p.alpha, p.beta)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Point& a, const Point& b) { return a.x < b.x; });
  return out;
}

inline std::vector<Point> curve_points(const PerformanceCurve& curve) {
  return curve_points(curve.kind, curve);
}

/// Trapezoidal area over x. Points sharing an x form a vertical segment
/// with no area: the run is entered at its first y and left at its last.
inline double auc(std::span<const Point> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("AUC needs at least two points");
  }
  double area = 0.0;
  bool has_width = false;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double width = points[i].x - points[i - 1].x;
    if (width < 0.0) throw std::invalid_argument("points are not sorted by x");
    if (width > 0.0) has_width = true;
    area += width * (points[i].y + points[i - 1].y) * 0.5;
  }
  if (!has_width) {
    throw std::invalid_argument("AUC needs at least two distinct x values");
  }
  return area;
}

/// Sweeps every distinct score as a threshold (descending), preceded by a
/// sentinel above the maximum score where nothing is predicted positive.
inline PerformanceCurve curve_from_scores(const Predictions& preds,
                                          CurveKind kind) {
  detail::validate(preds);
  const std::size_t n = preds.size();
  const double positives = static_cast<double>(preds.count_positives());
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0.0 || negatives == 0.0) {
    throw DegeneratePrevalence(
        "test set contains only one class; prevalence is 0 or 1");
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds.scores[a] > preds.scores[b];
  });

  PerformanceCurve curve;
  curve.pi = positives / static_cast<double>(n);
  curve.kind = kind;
  curve.points.push_back({0.0, 1.0});
  double tp = 0.0, fp = 0.0;
  for (std::size_t i = 0; i < n;) {
    const double score = preds.scores[order[i]];
    for (; i < n && preds.scores[order[i]] == score; ++i) {
      (preds.labels[order[i]] == 1 ? tp : fp) += 1.0;
    }
    curve.points.push_back({fp / negatives, (positives - tp) / positives});
  }
  return curve;
}

}  // namespace ovalue
