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

#ifndef RANKFAITH_MODELS_METRICS_H_
#define RANKFAITH_MODELS_METRICS_H_

#include <span>
#include <vector>

namespace rankfaith::models {

// Average precision: sum over descending-score groups of
// (recall increment) * (precision at the end of the group). Tied scores form
// one group. Throws SingleClass unless both labels occur.
double PrAuc(std::span<const double> scores, std::span<const int> labels);

// Unweighted mean of the per-class F1 at `threshold` (score >= threshold is
// predicted positive). A class with 0/0 precision or recall scores F1 = 0.
double MacroF1(std::span<const double> scores, std::span<const int> labels, double threshold);

// sup over observed scores s of |F1(s) - F0(s)|, the class-conditional
// empirical CDFs. In [0, 1].
double KsStatistic(std::span<const double> scores, std::span<const int> labels);

enum class ConfusionCell { kTruePositive, kTrueNegative, kFalsePositive, kFalseNegative };

const char* CellName(ConfusionCell cell);  // "TP", "TN", "FP", "FN"
ConfusionCell CellFromName(const char* name);

ConfusionCell CellOf(int label, double score, double threshold);
std::vector<ConfusionCell> ConfusionCells(std::span<const double> scores,
                                          std::span<const int> labels, double threshold);

struct EvalMetrics {
  double pr_auc = 0;
  double macro_f1 = 0;
  double ks = 0;  // fraction; reports show ks * 100
  double threshold = 0.5;
};

EvalMetrics Evaluate(std::span<const double> scores, std::span<const int> labels,
                     double threshold);

}  // namespace rankfaith::models

#endif  // RANKFAITH_MODELS_METRICS_H_
