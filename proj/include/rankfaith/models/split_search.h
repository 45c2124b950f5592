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

#ifndef RANKFAITH_MODELS_SPLIT_SEARCH_H_
#define RANKFAITH_MODELS_SPLIT_SEARCH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rankfaith/data/dataset.h"

namespace rankfaith::models {

struct SplitRules {
  double lambda = 1.0;
  double min_child_weight = 1.0;
};

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
  double left_grad = 0.0;
  double left_hess = 0.0;

  bool valid() const { return feature >= 0; }
};

struct NodeStats {
  double grad = 0.0;
  double hess = 0.0;
};

// Regularized loss reduction of splitting (G, H) into (GL, HL) and the rest.
double SplitGain(double grad, double hess, double left_grad, double left_hess, double lambda);

// Threshold strictly between two consecutive distinct values a < b such that
// a < t <= b.
double MidThreshold(double a, double b);

// Per-feature row orders, ascending by value, ties in row order. Built once
// per fit and shared by every level of every tree.
class SortedColumns {
 public:
  explicit SortedColumns(const data::DenseMatrix& x);

  const data::DenseMatrix& matrix() const { return *x_; }
  std::span<const std::uint32_t> order(std::size_t feature) const { return orders_[feature]; }
  std::size_t n_features() const { return orders_.size(); }

 private:
  const data::DenseMatrix* x_;
  std::vector<std::vector<std::uint32_t>> orders_;
};

// Exact greedy split search for every node of one tree level at once.
// `node_of_row[r]` is the level-local node of row r, or -1 when the row sits in
// a finished leaf. Features are scanned in parallel (OpenMP) and reduced in
// feature order, so the result does not depend on the thread count. A node
// gets an invalid candidate when no split has positive gain under the
// min-child-weight rule. Ties prefer the lower feature, then the lower
// threshold.
std::vector<SplitCandidate> FindSplitsLevel(const SortedColumns& columns,
                                            std::span<const int> node_of_row, int n_nodes,
                                            std::span<const NodeStats> totals,
                                            std::span<const double> grad,
                                            std::span<const double> hess, const SplitRules& rules);

// Serial reference for a single node: sorts the node's rows per feature and
// scans. Same tie rules and summation order as FindSplitsLevel.
SplitCandidate FindSplitReference(const data::DenseMatrix& x, std::span<const std::uint32_t> rows,
                                  std::span<const double> grad, std::span<const double> hess,
                                  const SplitRules& rules);

}  // namespace rankfaith::models

#endif  // RANKFAITH_MODELS_SPLIT_SEARCH_H_
