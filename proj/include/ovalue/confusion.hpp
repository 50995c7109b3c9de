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

// Binary confusion matrices and the {n, pi, alpha, beta} reparametrization.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ovalue/errors.hpp"

namespace ovalue {

/// Counts of a single thresholded evaluation. Cells are real-valued so that
/// a matrix can be rebuilt from rates; matrices built from data are integral.
struct ConfusionMatrix {
  double tp = 0.0;
  double fp = 0.0;
  double fn = 0.0;
  double tn = 0.0;

  double total() const { return tp + fp + fn + tn; }
  double positives() const { return tp + fn; }
  double negatives() const { return fp + tn; }

  bool operator==(const ConfusionMatrix&) const = default;
};

/// Test size, prevalence, Type-I error (false positive rate) and Type-II
/// error (false negative rate).
struct Rates {
  double n = 0.0;
  double pi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  bool operator==(const Rates&) const = default;
};

/// Ground-truth labels and classifier scores for one test set.
struct Predictions {
  std::vector<int> labels;
  std::vector<double> scores;

  std::size_t size() const { return labels.size(); }
  std::size_t count_positives() const {
    std::size_t count = 0;
    for (int label : labels) count += (label == 1);
    return count;
  }
};

namespace detail {

inline void require_binary(std::span<const int> values, const char* what) {
  for (int v : values) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument(std::string(what) + " must be 0 or 1");
    }
  }
}

inline void validate(const Predictions& preds) {
  if (preds.labels.size() != preds.scores.size()) {
    throw std::invalid_argument("labels and scores differ in length");
  }
  if (preds.labels.empty()) {
    throw std::invalid_argument("predictions are empty");
  }
  require_binary(preds.labels, "labels");
  for (double s : preds.scores) {
    if (std::isnan(s)) throw std::invalid_argument("scores contain NaN");
  }
}

}  // namespace detail

inline void validate(const ConfusionMatrix& cm) {
  if (!(cm.tp >= 0.0 && cm.fp >= 0.0 && cm.fn >= 0.0 && cm.tn >= 0.0)) {
    throw std::invalid_argument("confusion matrix cells must be non-negative");
  }
  if (!(cm.total() > 0.0)) {
    throw std::invalid_argument("confusion matrix is empty");
  }
}

inline void validate(const Rates& r) {
  if (!(r.n > 0.0)) throw std::invalid_argument("n must be positive");
  if (!(r.pi > 0.0 && r.pi < 1.0)) {
    throw DegeneratePrevalence("prevalence must lie strictly inside (0, 1)");
  }
  if (!(r.alpha >= 0.0 && r.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (!(r.beta >= 0.0 && r.beta <= 1.0)) {
    throw std::invalid_argument("beta must lie in [0, 1]");
  }
}

inline ConfusionMatrix confusion_from_labels(std::span<const int> labels,
                                             std::span<const int> predicted) {
  if (labels.size() != predicted.size()) {
    throw std::invalid_argument("labels and predictions differ in length");
  }
  if (labels.empty()) throw std::invalid_argument("no instances");
  detail::require_binary(labels, "labels");
  detail::require_binary(predicted, "predicted labels");

  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool actual = labels[i] == 1;
    const bool guess = predicted[i] == 1;
    if (actual && guess) {
      ++tp;
    } else if (!actual && guess) {
      ++fp;
    } else if (actual) {
      ++fn;
    } else {
      ++tn;
    }
  }
  return {static_cast<double>(tp), static_cast<double>(fp),
          static_cast<double>(fn), static_cast<double>(tn)};
}

/// An instance is predicted positive exactly when its score is >= t.
inline ConfusionMatrix confusion_at_threshold(const Predictions& preds,
                                              double t) {
  detail::validate(preds);
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool actual = preds.labels[i] == 1;
    const bool guess = preds.scores[i] >= t;
    tp += actual && guess;
    fp += !actual && guess;
    fn += actual && !guess;
    tn += !actual && !guess;
  }
  return {static_cast<double>(tp), static_cast<double>(fp),
          static_cast<double>(fn), static_cast<double>(tn)};
}

inline Rates rates_from_confusion(const ConfusionMatrix& cm) {
  validate(cm);
  if (cm.positives() <= 0.0 || cm.negatives() <= 0.0) {
    throw DegeneratePrevalence(
        "test set contains only one class; prevalence is 0 or 1");
  }
  const double n = cm.total();
  return {n, cm.positives() / n, cm.fp / cm.negatives(), cm.fn / cm.positives()};
}

inline ConfusionMatrix confusion_from_rates(const Rates& r) {
  validate(r);
  const double positives = r.n * r.pi;
  const double negatives = r.n * (1.0 - r.pi);
  return {positives * (1.0 - r.beta), negatives * r.alpha, positives * r.beta,
          negatives * (1.0 - r.alpha)};
}

}  // namespace ovalue
