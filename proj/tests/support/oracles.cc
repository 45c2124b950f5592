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

#include "oracles.h"

#include <bit>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

namespace rankfaith::testing {

namespace {

double Walk(const models::Tree& tree, int node, std::span<const double> x, std::uint32_t mask) {
  const auto& n = tree.nodes[node];
  if (n.feature < 0) return n.value;
  if (mask & (1u << n.feature)) {
    return Walk(tree, x[n.feature] < n.threshold ? n.left : n.right, x, mask);
  }
  const auto& l = tree.nodes[n.left];
  const auto& r = tree.nodes[n.right];
  return (l.cover * Walk(tree, n.left, x, mask) + r.cover * Walk(tree, n.right, x, mask)) / n.cover;
}

int Grow(models::Tree& tree, util::Rng& rng, int n_features, int depth, int max_depth,
         double cover) {
  const int index = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  tree.nodes[index].cover = cover;
  if (depth == max_depth || (depth > 0 && rng.Uniform() < 0.25)) {
    tree.nodes[index].value = rng.Normal();
    return index;
  }
  const int feature = static_cast<int>(rng.Int(0, n_features - 1));
  const double threshold = rng.Uniform(0.05, 0.95);
  const double left_cover = cover * rng.Uniform(0.1, 0.9);
  const double right_cover = cover - left_cover;
  const int left = Grow(tree, rng, n_features, depth + 1, max_depth, left_cover);
  const int right = Grow(tree, rng, n_features, depth + 1, max_depth, right_cover);
  auto& node = tree.nodes[index];
  node.feature = feature;
  node.threshold = threshold;
  node.left = left;
  node.right = right;
  return index;
}

}  // namespace

double CoalitionValue(const models::Tree& tree, std::span<const double> x, std::uint32_t mask) {
  return Walk(tree, 0, x, mask);
}

double ForestCoalitionValue(const models::GbdtModel& model, std::span<const double> x,
                            std::uint32_t mask) {
  double v = model.base_score;
  for (const auto& t : model.trees) v += CoalitionValue(t, x, mask);
  return v;
}

std::vector<double> BruteForceShapley(const models::GbdtModel& model, std::span<const double> x) {
  const int m = static_cast<int>(x.size());
  if (m > 16) throw std::invalid_argument("brute force needs m <= 16");
  const std::uint32_t full = 1u << m;
  std::vector<double> value(full);
  for (std::uint32_t s = 0; s < full; ++s) value[s] = ForestCoalitionValue(model, x, s);

  // weight[k] = k! (m-k-1)! / m!
  std::vector<double> weight(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    weight[k] = std::exp(std::lgamma(k + 1.0) + std::lgamma(m - k + 0.0) - std::lgamma(m + 1.0));
  }
  std::vector<double> phi(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < m; ++j) {
    const std::uint32_t bit = 1u << j;
    for (std::uint32_t s = 0; s < full; ++s) {
      if (s & bit) continue;
      phi[j] += weight[std::popcount(s)] * (value[s | bit] - value[s]);
    }
  }
  return phi;
}

models::GbdtModel RandomForest(util::Rng& rng, int n_features, int max_trees, int max_depth) {
  models::GbdtModel model;
  model.base_score = rng.Uniform(-2.0, 0.5);
  const int n_trees = static_cast<int>(rng.Int(1, max_trees));
  for (int t = 0; t < n_trees; ++t) {
    models::Tree tree;
    Grow(tree, rng, n_features, 0, max_depth, rng.Uniform(10.0, 1000.0));
    model.trees.push_back(std::move(tree));
  }
  for (int j = 0; j < n_features; ++j) model.feature_names.push_back("f" + std::to_string(j));
  model.params.max_depth = max_depth;
  model.params.n_rounds = n_trees;
  return model;
}

std::vector<double> RandomPoint(util::Rng& rng, int n_features) {
  std::vector<double> x(static_cast<std::size_t>(n_features));
  for (auto& v : x) v = rng.Uniform();
  return x;
}

std::optional<double> PairwiseKendall(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::map<std::string, int> pos_b;
  for (std::size_t i = 0; i < b.size(); ++i) pos_b.emplace(b[i], static_cast<int>(i));
  std::vector<std::pair<int, int>> shared;  // (rank in a, rank in b)
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto it = pos_b.find(a[i]);
    if (it != pos_b.end()) shared.emplace_back(static_cast<int>(i), it->second);
  }
  if (shared.size() < 2) return std::nullopt;
  long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < shared.size(); ++i) {
    for (std::size_t j = i + 1; j < shared.size(); ++j) {
      const long s = static_cast<long>(shared[i].first - shared[j].first) *
                     static_cast<long>(shared[i].second - shared[j].second);
      if (s > 0) ++concordant;
      if (s < 0) ++discordant;
    }
  }
  const double pairs = static_cast<double>(shared.size() * (shared.size() - 1) / 2);
  return static_cast<double>(concordant - discordant) / pairs;
}

}  // namespace rankfaith::testing
