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

#include "rankfaith/attribution/attribution.h"

#include <algorithm>

#include "rankfaith/errors.h"
#include "rankfaith/util/parallel.h"

namespace rankfaith::attribution {

namespace {

// One entry of the unique decision path. pweight of element i is the weight
// of all permutations with i features "on" among those preceding it.
struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

void ExtendPath(PathElement* path, int depth, double zero_fraction, double one_fraction,
                int feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].pweight += one_fraction * path[i].pweight * (i + 1) / (depth + 1.0);
    path[i].pweight = zero_fraction * path[i].pweight * (depth - i) / (depth + 1.0);
  }
}

void UnwindPath(PathElement* path, int depth, int index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one_fraction != 0.0) {
      const double tmp = path[i].pweight;
      path[i].pweight = next_one_portion * (depth + 1) / ((i + 1) * one_fraction);
      next_one_portion = tmp - path[i].pweight * zero_fraction * (depth - i) / (depth + 1.0);
    } else {
      path[i].pweight = path[i].pweight * (depth + 1) / (zero_fraction * (depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

// Total permutation weight if element `index` were unwound.
double UnwoundPathSum(const PathElement* path, int depth, int index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  double total = 0.0;
  for (int i = depth - 1; i >= 0; --i) {
    if (one_fraction != 0.0) {
      const double tmp = next_one_portion * (depth + 1) / ((i + 1) * one_fraction);
      total += tmp;
      next_one_portion = path[i].pweight - tmp * zero_fraction * ((depth - i) / (depth + 1.0));
    } else if (zero_fraction != 0.0) {
      total += (path[i].pweight / zero_fraction) / ((depth - i) / (depth + 1.0));
    }
  }
  return total;
}

class TreeShapWalker {
 public:
  TreeShapWalker(const models::Tree& tree, std::span<const double> x, std::vector<double>& phi)
      : tree_(tree), x_(x), phi_(phi) {
    const int max_depth = tree.MaxDepth() + 2;
    path_storage_.resize(static_cast<std::size_t>(max_depth * (max_depth + 1)) / 2 + 1);
  }

  void Run() { Recurse(0, 0, path_storage_.data(), 1.0, 1.0, -1); }

 private:
  double Cover(int node) const {
    const double c = tree_.nodes[node].cover;
    if (!(c > 0.0)) {
      throw InvalidForest("node " + std::to_string(node) + " has non-positive cover");
    }
    return c;
  }

  void Recurse(int node_index, int depth, PathElement* parent_path, double parent_zero,
               double parent_one, int parent_feature) {
    const models::TreeNode& node = tree_.nodes[node_index];
    PathElement* path = parent_path + depth + 1;
    std::copy(parent_path, parent_path + depth + 1, path);
    ExtendPath(path, depth, parent_zero, parent_one, parent_feature);

    if (node.is_leaf()) {
      for (int i = 1; i <= depth; ++i) {
        const double w = UnwoundPathSum(path, depth, i);
        const PathElement& el = path[i];
        phi_[el.feature] += w * (el.one_fraction - el.zero_fraction) * node.value;
      }
      return;
    }

    const int hot = x_[node.feature] < node.threshold ? node.left : node.right;
    const int cold = hot == node.left ? node.right : node.left;
    const double cover = Cover(node_index);
    const double hot_zero = Cover(hot) / cover;
    const double cold_zero = Cover(cold) / cover;
    double incoming_zero = 1.0;
    double incoming_one = 1.0;

    // A feature seen earlier on the path is unwound and re-extended here.
    int k = 0;
    for (; k <= depth; ++k) {
      if (path[k].feature == node.feature) break;
    }
    if (k != depth + 1) {
      incoming_zero = path[k].zero_fraction;
      incoming_one = path[k].one_fraction;
      UnwindPath(path, depth, k);
      depth -= 1;
    }

    Recurse(hot, depth + 1, path, hot_zero * incoming_zero, incoming_one, node.feature);
    Recurse(cold, depth + 1, path, cold_zero * incoming_zero, 0.0, node.feature);
  }

  const models::Tree& tree_;
  std::span<const double> x_;
  std::vector<double>& phi_;
  std::vector<PathElement> path_storage_;
};

void CheckWidth(std::size_t expected, std::span<const double> x) {
  if (x.size() != expected) {
    throw DimensionMismatch("row has " + std::to_string(x.size()) + " columns, model expects " +
                            std::to_string(expected));
  }
}

}  // namespace

double AttributionVector::Reconstructed() const {
  double total = baseline;
  for (double v : values) total += v;
  return total;
}

AttributionVector LinearContributions(const models::LogisticModel& model,
                                      std::span<const double> x) {
  CheckWidth(model.n_features(), x);
  AttributionVector out;
  out.values.resize(x.size());
  out.baseline = model.intercept;
  for (std::size_t j = 0; j < x.size(); ++j) out.values[j] = model.coefficients[j] * x[j];
  out.model_output = models::Predict(model, x).raw_score;
  return out;
}

double TreeExpectation(const models::Tree& tree) {
  // Children always follow their parent, so a reverse sweep sees both
  // children before the parent.
  std::vector<double> mean(tree.nodes.size());
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const auto& n = tree.nodes[i];
    if (n.is_leaf()) {
      mean[i] = n.value;
      continue;
    }
    if (!(n.cover > 0.0)) throw InvalidForest("node " + std::to_string(i) + " has non-positive cover");
    mean[i] = (tree.nodes[n.left].cover * mean[n.left] + tree.nodes[n.right].cover * mean[n.right]) /
              n.cover;
  }
  return mean[0];
}

AttributionVector TreeShap(const models::GbdtModel& model, std::span<const double> x) {
  CheckWidth(model.n_features(), x);
  AttributionVector out;
  out.values.assign(x.size(), 0.0);
  out.baseline = model.base_score;
  for (const auto& tree : model.trees) {
    out.baseline += TreeExpectation(tree);
    TreeShapWalker(tree, x, out.values).Run();
  }
  out.model_output = models::Predict(model, x).raw_score;
  return out;
}

AttributionVector Attribute(const models::Model& model, std::span<const double> x) {
  if (const auto* lr = std::get_if<models::LogisticModel>(&model)) return LinearContributions(*lr, x);
  return TreeShap(std::get<models::GbdtModel>(model), x);
}

std::vector<AttributionVector> AttributeBatch(const models::Model& model,
                                              const data::DenseMatrix& matrix,
                                              std::span<const std::size_t> rows) {
  std::vector<AttributionVector> out(rows.size());
  util::ParallelFor(static_cast<std::int64_t>(rows.size()),
                    [&](std::int64_t i) { out[i] = Attribute(model, matrix.row(rows[i])); });
  return out;
}

}  // namespace rankfaith::attribution
