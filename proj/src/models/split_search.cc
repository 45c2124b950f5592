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

#include "rankfaith/models/split_search.h"

#include <algorithm>
#include <numeric>

#include "rankfaith/util/parallel.h"

namespace rankfaith::models {

double SplitGain(double grad, double hess, double left_grad, double left_hess, double lambda) {
  const double right_grad = grad - left_grad;
  const double right_hess = hess - left_hess;
  return 0.5 * (left_grad * left_grad / (left_hess + lambda) +
                right_grad * right_grad / (right_hess + lambda) - grad * grad / (hess + lambda));
}

double MidThreshold(double a, double b) {
  const double t = a + (b - a) / 2.0;
  return t > a ? t : b;
}

SortedColumns::SortedColumns(const data::DenseMatrix& x) : x_(&x), orders_(x.cols()) {
  for (std::size_t f = 0; f < x.cols(); ++f) {
    auto& order = orders_[f];
    order.resize(x.rows());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return x.at(a, f) < x.at(b, f); });
  }
}

namespace {

struct ScanState {
  double left_grad = 0.0;
  double left_hess = 0.0;
  double last_value = 0.0;
  bool started = false;
};

// Considers splitting before a row with value `next`, given the accumulated
// left statistics. Updates `best` when strictly better.
inline void Consider(const ScanState& s, double next, const NodeStats& total,
                     const SplitRules& rules, int feature, SplitCandidate& best) {
  if (!s.started || next == s.last_value) return;
  const double right_hess = total.hess - s.left_hess;
  if (s.left_hess < rules.min_child_weight || right_hess < rules.min_child_weight) return;
  const double gain = SplitGain(total.grad, total.hess, s.left_grad, s.left_hess, rules.lambda);
  if (gain > best.gain) {
    best = {feature, MidThreshold(s.last_value, next), gain, s.left_grad, s.left_hess};
  }
}

}  // namespace

std::vector<SplitCandidate> FindSplitsLevel(const SortedColumns& columns,
                                            std::span<const int> node_of_row, int n_nodes,
                                            std::span<const NodeStats> totals,
                                            std::span<const double> grad,
                                            std::span<const double> hess, const SplitRules& rules) {
  const data::DenseMatrix& x = columns.matrix();
  const auto n_features = static_cast<std::int64_t>(columns.n_features());
  std::vector<std::vector<SplitCandidate>> per_feature(
      n_features, std::vector<SplitCandidate>(n_nodes));

  util::ParallelFor(n_features, [&](std::int64_t f) {
    const int feature = static_cast<int>(f);
    std::vector<ScanState> state(n_nodes);
    auto& best = per_feature[f];
    for (std::uint32_t r : columns.order(f)) {
      const int node = node_of_row[r];
      if (node < 0) continue;
      ScanState& s = state[node];
      const double v = x.at(r, f);
      Consider(s, v, totals[node], rules, feature, best[node]);
      s.left_grad += grad[r];
      s.left_hess += hess[r];
      s.last_value = v;
      s.started = true;
    }
  });

  std::vector<SplitCandidate> result(n_nodes);
  for (std::int64_t f = 0; f < n_features; ++f) {
    for (int k = 0; k < n_nodes; ++k) {
      if (per_feature[f][k].valid() && per_feature[f][k].gain > result[k].gain) {
        result[k] = per_feature[f][k];
      }
    }
  }
  return result;
}

SplitCandidate FindSplitReference(const data::DenseMatrix& x, std::span<const std::uint32_t> rows,
                                  std::span<const double> grad, std::span<const double> hess,
                                  const SplitRules& rules) {
  std::vector<std::uint32_t> sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end());
  NodeStats total;
  for (std::uint32_t r : sorted) {
    total.grad += grad[r];
    total.hess += hess[r];
  }
  SplitCandidate best;
  for (std::size_t f = 0; f < x.cols(); ++f) {
    std::vector<std::uint32_t> order = sorted;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return x.at(a, f) < x.at(b, f); });
    ScanState s;
    for (std::uint32_t r : order) {
      Consider(s, x.at(r, f), total, rules, static_cast<int>(f), best);
      s.left_grad += grad[r];
      s.left_hess += hess[r];
      s.last_value = x.at(r, f);
      s.started = true;
    }
  }
  return best;
}

}  // namespace rankfaith::models
