/*
 * Copyright 2026 The rankfaith Authors.
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

#include "rankfaith/models/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "rankfaith/errors.h"

namespace rankfaith::models {

namespace {

void CheckInputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionMismatch("scores and labels differ in length");
  }
  std::size_t positives = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw InvalidArgument("labels must be 0/1");
    positives += y;
  }
  if (positives == 0 || positives == labels.size()) {
    throw SingleClass("metric needs both classes present");
  }
}

std::vector<std::size_t> OrderByScore(std::span<const double> scores, bool descending) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  return order;
}

double F1(double tp, double fp, double fn) {
  const double precision_den = tp + fp;
  const double recall_den = tp + fn;
  if (precision_den == 0 || recall_den == 0) return 0.0;
  const double precision = tp / precision_den;
  const double recall = tp / recall_den;
  if (precision + recall == 0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double PrAuc(std::span<const double> scores, std::span<const int> labels) {
  CheckInputs(scores, labels);
  const double total_pos = std::accumulate(labels.begin(), labels.end(), 0.0);
  const auto order = OrderByScore(scores, /*descending=*/true);
  double tp = 0, fp = 0, ap = 0, prev_recall = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]] == 1) {
        tp += 1;
      } else {
        fp += 1;
      }
      ++j;
    }
    const double recall = tp / total_pos;
    ap += (recall - prev_recall) * (tp / (tp + fp));
    prev_recall = recall;
    i = j;
  }
  return ap;
}

double MacroF1(std::span<const double> scores, std::span<const int> labels, double threshold) {
  CheckInputs(scores, labels);
  double tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (labels[i] == 1) {
      predicted ? tp += 1 : fn += 1;
    } else {
      predicted ? fp += 1 : tn += 1;
    }
  }
  // Class 0 swaps the roles: its true positives are tn.
  return 0.5 * (F1(tp, fp, fn) + F1(tn, fn, fp));
}

double KsStatistic(std::span<const double> scores, std::span<const int> labels) {
  CheckInputs(scores, labels);
  const double n1 = std::accumulate(labels.begin(), labels.end(), 0.0);
  const double n0 = static_cast<double>(labels.size()) - n1;
  const auto order = OrderByScore(scores, /*descending=*/false);
  double c1 = 0, c0 = 0, best = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      labels[order[j]] == 1 ? c1 += 1 : c0 += 1;
      ++j;
    }
    best = std::max(best, std::fabs(c1 / n1 - c0 / n0));
    i = j;
  }
  return best;
}

const char* CellName(ConfusionCell cell) {
  switch (cell) {
    case ConfusionCell::kTruePositive: return "TP";
    case ConfusionCell::kTrueNegative: return "TN";
    case ConfusionCell::kFalsePositive: return "FP";
    case ConfusionCell::kFalseNegative: return "FN";
  }
  return "?";
}

ConfusionCell CellFromName(const char* name) {
  for (auto cell : {ConfusionCell::kTruePositive, ConfusionCell::kTrueNegative,
                    ConfusionCell::kFalsePositive, ConfusionCell::kFalseNegative}) {
    if (std::strcmp(CellName(cell), name) == 0) return cell;
  }
  throw InvalidArgument(std::string("unknown confusion cell '") + name + "'");
}

ConfusionCell CellOf(int label, double score, double threshold) {
  const bool predicted = score >= threshold;
  if (label == 1) return predicted ? ConfusionCell::kTruePositive : ConfusionCell::kFalseNegative;
  return predicted ? ConfusionCell::kFalsePositive : ConfusionCell::kTrueNegative;
}

std::vector<ConfusionCell> ConfusionCells(std::span<const double> scores,
                                          std::span<const int> labels, double threshold) {
  if (scores.size() != labels.size()) throw DimensionMismatch("scores and labels differ in length");
  std::vector<ConfusionCell> cells(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) cells[i] = CellOf(labels[i], scores[i], threshold);
  return cells;
}

EvalMetrics Evaluate(std::span<const double> scores, std::span<const int> labels,
                     double threshold) {
  return {PrAuc(scores, labels), MacroF1(scores, labels, threshold), KsStatistic(scores, labels),
          threshold};
}

}  // namespace rankfaith::models
