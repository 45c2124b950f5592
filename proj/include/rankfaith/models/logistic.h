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

#ifndef RANKFAITH_MODELS_LOGISTIC_H_
#define RANKFAITH_MODELS_LOGISTIC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rankfaith/data/dataset.h"
#include "rankfaith/models/model.h"

namespace rankfaith::models {

struct LogisticOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 10000;
};

// Minimizes mean negative log-likelihood + lambda/2 * ||w||^2 over the
// standardized coefficients w (intercept unpenalized) with damped Newton
// steps, then maps the solution back to the input scale. Constant columns get
// a zero coefficient. Throws ConvergenceError carrying the final gradient norm
// when the budget runs out.
LogisticModel FitLogistic(const data::DenseMatrix& x, std::span<const int> labels,
                          std::span<const std::size_t> rows, double lambda,
                          const LogisticOptions& options = {});

struct LambdaScore {
  double lambda = 0;
  double mean_pr_auc = 0;
  std::vector<double> fold_pr_auc;
};

struct LogisticTrainResult {
  LogisticModel model;
  std::vector<LambdaScore> cv;
};

// Picks lambda from `lambda_grid` by mean stratified-CV PR-AUC over `rows`,
// then refits on all of `rows`. Ties go to the larger lambda.
LogisticTrainResult TrainLogistic(const data::EncodedDataset& ds,
                                  std::span<const std::size_t> rows,
                                  std::span<const double> lambda_grid, int folds,
                                  std::uint64_t seed, const LogisticOptions& options = {});

std::vector<double> DefaultLambdaGrid();

}  // namespace rankfaith::models

#endif  // RANKFAITH_MODELS_LOGISTIC_H_
