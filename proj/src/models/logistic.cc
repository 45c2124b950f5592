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

#include "rankfaith/models/logistic.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "rankfaith/data/split.h"
#include "rankfaith/errors.h"
#include "rankfaith/models/metrics.h"
#include "rankfaith/util/parallel.h"

namespace rankfaith::models {

namespace {

// log(1 + exp(z)) without overflow.
double Softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

struct Problem {
  Eigen::MatrixXd x;  // n x (1 + k): intercept column then standardized active columns
  Eigen::VectorXd y;
  double lambda;

  double Objective(const Eigen::VectorXd& w) const {
    const Eigen::VectorXd z = x * w;
    double nll = 0;
    for (Eigen::Index i = 0; i < z.size(); ++i) nll += Softplus(z[i]) - y[i] * z[i];
    return nll / static_cast<double>(x.rows()) + 0.5 * lambda * w.tail(w.size() - 1).squaredNorm();
  }
};

}  // namespace

std::vector<double> DefaultLambdaGrid() { return {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}; }

LogisticModel FitLogistic(const data::DenseMatrix& x, std::span<const int> labels,
                          std::span<const std::size_t> rows, double lambda,
                          const LogisticOptions& options) {
  if (lambda < 0) throw InvalidArgument("lambda must be non-negative");
  if (rows.empty()) throw InvalidArgument("no training rows");
  const std::size_t m = x.cols();
  const auto n = static_cast<double>(rows.size());

  std::vector<double> center(m, 0.0), scale(m, 1.0);
  std::vector<int> active;
  for (std::size_t c = 0; c < m; ++c) {
    double mean = 0;
    for (std::size_t r : rows) mean += x.at(r, c);
    mean /= n;
    double var = 0;
    for (std::size_t r : rows) var += (x.at(r, c) - mean) * (x.at(r, c) - mean);
    const double sd = std::sqrt(var / n);
    center[c] = mean;
    if (sd > 0) {
      scale[c] = sd;
      active.push_back(static_cast<int>(c));
    }
  }

  Problem problem;
  problem.lambda = lambda;
  const auto k = static_cast<Eigen::Index>(active.size());
  problem.x.resize(static_cast<Eigen::Index>(rows.size()), k + 1);
  problem.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    problem.x(ii, 0) = 1.0;
    for (Eigen::Index a = 0; a < k; ++a) {
      const int c = active[a];
      problem.x(ii, a + 1) = (x.at(rows[i], c) - center[c]) / scale[c];
    }
    problem.y[ii] = labels[rows[i]];
  }

  Eigen::VectorXd w = Eigen::VectorXd::Zero(k + 1);
  const double prevalence = problem.y.mean();
  if (prevalence > 0 && prevalence < 1) w[0] = std::log(prevalence / (1 - prevalence));

  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(k + 1, lambda);
  penalty[0] = 0.0;

  double grad_norm = 0;
  bool converged = false;
  double objective = problem.Objective(w);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd z = problem.x * w;
    Eigen::VectorXd p(z.size()), h(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      p[i] = Sigmoid(z[i]);
      h[i] = p[i] * (1 - p[i]);
    }
    const Eigen::VectorXd grad =
        problem.x.transpose() * (p - problem.y) / n + penalty.cwiseProduct(w);
    grad_norm = grad.norm();
    if (grad_norm < options.gradient_tolerance) {
      converged = true;
      break;
    }
    Eigen::MatrixXd hess = problem.x.transpose() * h.asDiagonal() * problem.x / n;
    hess.diagonal() += penalty;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    Eigen::VectorXd step = ldlt.solve(grad);
    if (ldlt.info() != Eigen::Success || !step.allFinite()) step = grad;  // fall back to gradient

    // Armijo backtracking. Near the optimum the decrease falls below the
    // rounding error of the objective, so that much slack is allowed.
    const double slack = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(objective));
    double t = 1.0;
    const double slope = grad.dot(step);
    Eigen::VectorXd candidate = w - step;
    double next = problem.Objective(candidate);
    while (next > objective - 1e-4 * t * slope + slack && t > 1e-10) {
      t *= 0.5;
      candidate = w - t * step;
      next = problem.Objective(candidate);
    }
    if (next > objective + slack) break;  // no descent possible
    w = candidate;
    objective = next;
  }
  if (!converged) {
    throw ConvergenceError("logistic fit did not reach gradient norm " +
                               std::to_string(options.gradient_tolerance) + " (lambda=" +
                               std::to_string(lambda) + ")",
                           grad_norm);
  }

  LogisticModel model;
  model.lambda = lambda;
  model.center = center;
  model.scale = scale;
  model.coefficients.assign(m, 0.0);
  model.intercept = w[0];
  for (Eigen::Index a = 0; a < k; ++a) {
    const int c = active[a];
    model.coefficients[c] = w[a + 1] / scale[c];
    model.intercept -= model.coefficients[c] * center[c];
  }
  return model;
}

LogisticTrainResult TrainLogistic(const data::EncodedDataset& ds,
                                  std::span<const std::size_t> rows,
                                  std::span<const double> lambda_grid, int folds,
                                  std::uint64_t seed, const LogisticOptions& options) {
  if (lambda_grid.empty()) throw InvalidArgument("lambda grid is empty");
  if (folds < 2) throw InvalidArgument("need at least 2 folds");

  std::vector<int> sub_labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) sub_labels[i] = ds.labels[rows[i]];
  const auto assignment = data::StratifiedFolds(sub_labels, folds, seed);

  const auto n_lambda = static_cast<int>(lambda_grid.size());
  std::vector<LambdaScore> cv(lambda_grid.size());
  for (int l = 0; l < n_lambda; ++l) {
    cv[l].lambda = lambda_grid[l];
    cv[l].fold_pr_auc.assign(folds, 0.0);
  }

  util::ParallelFor(static_cast<std::int64_t>(n_lambda) * folds, [&](std::int64_t task) {
      const auto l = static_cast<int>(task / folds);
      const auto f = static_cast<int>(task % folds);
      std::vector<std::size_t> fit_rows, val_rows;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        (assignment[i] == f ? val_rows : fit_rows).push_back(rows[i]);
      }
      const auto model = FitLogistic(ds.matrix, ds.labels, fit_rows, lambda_grid[l], options);
      std::vector<double> scores(val_rows.size());
      std::vector<int> labels(val_rows.size());
      for (std::size_t i = 0; i < val_rows.size(); ++i) {
        scores[i] = Predict(model, ds.matrix.row(val_rows[i])).raw_score;
        labels[i] = ds.labels[val_rows[i]];
      }
      cv[l].fold_pr_auc[f] = PrAuc(scores, labels);
  });

  std::size_t best = 0;
  for (std::size_t l = 0; l < cv.size(); ++l) {
    double sum = 0;
    for (double v : cv[l].fold_pr_auc) sum += v;
    cv[l].mean_pr_auc = sum / folds;
    const bool better = cv[l].mean_pr_auc > cv[best].mean_pr_auc ||
                        (cv[l].mean_pr_auc == cv[best].mean_pr_auc && cv[l].lambda > cv[best].lambda);
    if (better) best = l;
  }
  LogisticTrainResult result;
  result.model = FitLogistic(ds.matrix, ds.labels, rows, cv[best].lambda, options);
  result.model.feature_names = ds.encoded_names;
  result.cv = std::move(cv);
  return result;
}

}  // namespace rankfaith::models
