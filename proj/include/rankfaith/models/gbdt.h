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

#ifndef RANKFAITH_MODELS_GBDT_H_
#define RANKFAITH_MODELS_GBDT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rankfaith/data/dataset.h"
#include "rankfaith/models/model.h"

namespace rankfaith::models {

enum class SplitKernel {
  kParallelLevel,    // FindSplitsLevel, OpenMP over features
  kSerialReference,  // FindSplitReference per node
};

struct GbdtFitResult {
  GbdtModel model;
  // Mean training log-loss after each round (index 0 = before any tree).
  std::vector<double> train_logloss;
};

// Second-order boosting on the logistic loss with exact greedy, depth-wise
// tree growth. Leaves take -G/(H + lambda) scaled by the learning rate; node
// covers are hessian sums. `x` holds the fit rows only.
GbdtFitResult FitGbdt(const data::DenseMatrix& x, std::span<const int> labels,
                      const GbdtParams& params,
                      SplitKernel kernel = SplitKernel::kParallelLevel);

// Random-search ranges. Learning rate, min child weight and lambda are drawn
// log-uniformly; depth and rounds uniformly over integers.
struct GbdtSearchSpace {
  int depth_min = 2, depth_max = 6;
  int rounds_min = 50, rounds_max = 400;
  double learning_rate_min = 0.03, learning_rate_max = 0.3;
  double min_child_weight_min = 0.5, min_child_weight_max = 10.0;
  double lambda_min = 0.1, lambda_max = 10.0;
  int trials = 30;

  // Throws DegenerateSearchSpace.
  void Validate() const;
};

struct GbdtTrial {
  GbdtParams params;
  double mean_pr_auc = 0;
  std::vector<double> fold_pr_auc;
};

struct GbdtTrainResult {
  GbdtModel model;
  std::vector<GbdtTrial> trials;
};

// Trial t draws its parameters from a stream derived from (seed, t); trials
// are scored by mean stratified-CV PR-AUC and run in parallel. The best trial
// (ties to the lower index) is refit on all `rows`. Throws ConstantFeatures
// when every column is constant over `rows`.
GbdtTrainResult TrainGbdt(const data::EncodedDataset& ds, std::span<const std::size_t> rows,
                          const GbdtSearchSpace& space, int folds, std::uint64_t seed);

GbdtParams DrawParams(const GbdtSearchSpace& space, std::uint64_t seed, int trial);

double LogLoss(std::span<const double> margins, std::span<const int> labels);

}  // namespace rankfaith::models

#endif  // RANKFAITH_MODELS_GBDT_H_
