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

#include "rankfaith/models/gbdt.h"

#include <algorithm>
#include <cmath>

#include "rankfaith/data/split.h"
#include "rankfaith/errors.h"
#include "rankfaith/models/metrics.h"
#include "rankfaith/models/split_search.h"
#include "rankfaith/util/parallel.h"
#include "rankfaith/util/rng.h"

namespace rankfaith::models {

namespace {

double LeafWeight(const NodeStats& s, double lambda) { return -s.grad / (s.hess + lambda); }

// Grows one tree depth-wise. On return `leaf_of_row` holds each row's leaf.
Tree GrowTree(const SortedColumns& columns, std::span<const double> grad,
              std::span<const double> hess, const GbdtParams& params, SplitKernel kernel,
              std::vector<int>& leaf_of_row) {
  const data::DenseMatrix& x = columns.matrix();
  const std::size_t n = x.rows();
  const SplitRules rules{params.lambda, params.min_child_weight};

  Tree tree;
  std::vector<NodeStats> stats(1);
  for (std::size_t r = 0; r < n; ++r) {
    stats[0].grad += grad[r];
    stats[0].hess += hess[r];
  }
  tree.nodes.push_back({});
  leaf_of_row.assign(n, 0);

  std::vector<int> frontier{0};
  for (int depth = 0; depth < params.max_depth && !frontier.empty(); ++depth) {
    const int width = static_cast<int>(frontier.size());
    std::vector<int> level_of_node(tree.nodes.size(), -1);
    for (int k = 0; k < width; ++k) level_of_node[frontier[k]] = k;

    std::vector<SplitCandidate> splits;
    if (kernel == SplitKernel::kParallelLevel) {
      std::vector<int> node_of_row(n);
      for (std::size_t r = 0; r < n; ++r) node_of_row[r] = level_of_node[leaf_of_row[r]];
      std::vector<NodeStats> totals(width);
      for (int k = 0; k < width; ++k) totals[k] = stats[frontier[k]];
      splits = FindSplitsLevel(columns, node_of_row, width, totals, grad, hess, rules);
    } else {
      std::vector<std::vector<std::uint32_t>> members(width);
      for (std::size_t r = 0; r < n; ++r) {
        const int k = level_of_node[leaf_of_row[r]];
        if (k >= 0) members[k].push_back(static_cast<std::uint32_t>(r));
      }
      for (int k = 0; k < width; ++k) {
        splits.push_back(FindSplitReference(x, members[k], grad, hess, rules));
      }
    }

    std::vector<int> next_frontier;
    for (int k = 0; k < width; ++k) {
      if (!splits[k].valid()) continue;
      const int id = frontier[k];
      const int left = static_cast<int>(tree.nodes.size());
      tree.nodes[id].feature = splits[k].feature;
      tree.nodes[id].threshold = splits[k].threshold;
      tree.nodes[id].left = left;
      tree.nodes[id].right = left + 1;
      tree.nodes.push_back({});
      tree.nodes.push_back({});
      stats.resize(tree.nodes.size());
      next_frontier.push_back(left);
      next_frontier.push_back(left + 1);
    }
    if (next_frontier.empty()) break;

    // Route rows and accumulate child statistics in row order.
    for (std::size_t r = 0; r < n; ++r) {
      const TreeNode& node = tree.nodes[leaf_of_row[r]];
      if (node.is_leaf()) continue;
      const int child = x.at(r, node.feature) < node.threshold ? node.left : node.right;
      leaf_of_row[r] = child;
      stats[child].grad += grad[r];
      stats[child].hess += hess[r];
    }
    frontier = std::move(next_frontier);
  }

  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    tree.nodes[i].cover = stats[i].hess;
    tree.nodes[i].value = params.learning_rate * LeafWeight(stats[i], params.lambda);
  }
  return tree;
}

}  // namespace

double LogLoss(std::span<const double> margins, std::span<const int> labels) {
  double total = 0;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    const double z = margins[i];
    const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    total += softplus - labels[i] * z;
  }
  return total / static_cast<double>(margins.size());
}

GbdtFitResult FitGbdt(const data::DenseMatrix& x, std::span<const int> labels,
                      const GbdtParams& params, SplitKernel kernel) {
  if (x.rows() != labels.size()) throw DimensionMismatch("rows and labels differ");
  if (params.max_depth < 1 || params.n_rounds < 0 || !(params.learning_rate > 0) ||
      params.lambda < 0 || params.min_child_weight < 0) {
    throw InvalidArgument("invalid GBDT parameters");
  }
  const std::size_t n = x.rows();
  double positives = 0;
  for (int y : labels) positives += y;
  if (positives == 0 || positives == static_cast<double>(n)) {
    throw SingleClass("GBDT training needs both classes");
  }

  GbdtFitResult result;
  GbdtModel& model = result.model;
  model.params = params;
  for (std::size_t c = 0; c < x.cols(); ++c) model.feature_names.push_back("f" + std::to_string(c));
  model.base_score = std::log(positives / (static_cast<double>(n) - positives));

  const SortedColumns columns(x);
  std::vector<double> margin(n, model.base_score), grad(n), hess(n);
  std::vector<int> leaf_of_row;
  result.train_logloss.push_back(LogLoss(margin, labels));
  for (int round = 0; round < params.n_rounds; ++round) {
    for (std::size_t r = 0; r < n; ++r) {
      const double p = Sigmoid(margin[r]);
      grad[r] = p - labels[r];
      hess[r] = p * (1.0 - p);
    }
    Tree tree = GrowTree(columns, grad, hess, params, kernel, leaf_of_row);
    for (std::size_t r = 0; r < n; ++r) margin[r] += tree.nodes[leaf_of_row[r]].value;
    model.trees.push_back(std::move(tree));
    result.train_logloss.push_back(LogLoss(margin, labels));
  }
  return result;
}

void GbdtSearchSpace::Validate() const {
  const bool ok = depth_min >= 1 && depth_min <= depth_max && rounds_min >= 1 &&
                  rounds_min <= rounds_max && learning_rate_min > 0 &&
                  learning_rate_min <= learning_rate_max && learning_rate_max <= 1.0 &&
                  min_child_weight_min > 0 && min_child_weight_min <= min_child_weight_max &&
                  lambda_min > 0 && lambda_min <= lambda_max && trials >= 1;
  if (!ok) throw DegenerateSearchSpace("search space bounds are invalid or empty");
}

GbdtParams DrawParams(const GbdtSearchSpace& space, std::uint64_t seed, int trial) {
  util::Rng rng = util::Rng::Derive(seed, static_cast<std::uint64_t>(trial));
  GbdtParams p;
  p.max_depth = static_cast<int>(rng.Int(space.depth_min, space.depth_max));
  p.n_rounds = static_cast<int>(rng.Int(space.rounds_min, space.rounds_max));
  p.learning_rate = rng.LogUniform(space.learning_rate_min, space.learning_rate_max);
  p.min_child_weight = rng.LogUniform(space.min_child_weight_min, space.min_child_weight_max);
  p.lambda = rng.LogUniform(space.lambda_min, space.lambda_max);
  return p;
}

GbdtTrainResult TrainGbdt(const data::EncodedDataset& ds, std::span<const std::size_t> rows,
                          const GbdtSearchSpace& space, int folds, std::uint64_t seed) {
  space.Validate();
  if (folds < 2) throw InvalidArgument("need at least 2 folds");
  bool any_varies = false;
  for (std::size_t c = 0; c < ds.matrix.cols() && !any_varies; ++c) {
    for (std::size_t r : rows) {
      if (ds.matrix.at(r, c) != ds.matrix.at(rows[0], c)) {
        any_varies = true;
        break;
      }
    }
  }
  if (!any_varies) throw ConstantFeatures("every feature is constant over the training rows");

  std::vector<int> sub_labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) sub_labels[i] = ds.labels[rows[i]];
  const auto assignment = data::StratifiedFolds(sub_labels, folds, seed);

  std::vector<GbdtTrial> trials(space.trials);
  for (int t = 0; t < space.trials; ++t) {
    trials[t].params = DrawParams(space, seed, t);
    trials[t].fold_pr_auc.assign(folds, 0.0);
  }

  util::ParallelFor(static_cast<std::int64_t>(space.trials) * folds, [&](std::int64_t task) {
    const auto t = static_cast<int>(task / folds);
    const auto f = static_cast<int>(task % folds);
    std::vector<std::size_t> fit_rows, val_rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      (assignment[i] == f ? val_rows : fit_rows).push_back(rows[i]);
    }
    std::vector<int> fit_labels;
    for (std::size_t r : fit_rows) fit_labels.push_back(ds.labels[r]);
    const auto fit = FitGbdt(ds.matrix.Rows(fit_rows), fit_labels, trials[t].params);
    std::vector<double> scores;
    std::vector<int> labels;
    for (std::size_t r : val_rows) {
      scores.push_back(Predict(fit.model, ds.matrix.row(r)).raw_score);
      labels.push_back(ds.labels[r]);
    }
    trials[t].fold_pr_auc[f] = PrAuc(scores, labels);
  });

  std::size_t best = 0;
  for (std::size_t t = 0; t < trials.size(); ++t) {
    double sum = 0;
    for (double v : trials[t].fold_pr_auc) sum += v;
    trials[t].mean_pr_auc = sum / folds;
    if (trials[t].mean_pr_auc > trials[best].mean_pr_auc) best = t;
  }

  std::vector<int> labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) labels[i] = ds.labels[rows[i]];
  GbdtTrainResult result;
  result.model = FitGbdt(ds.matrix.Rows(rows), labels, trials[best].params).model;
  result.trials = std::move(trials);
  result.model.feature_names = ds.encoded_names;
  return result;
}

}  // namespace rankfaith::models
