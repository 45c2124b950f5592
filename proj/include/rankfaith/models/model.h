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

#ifndef RANKFAITH_MODELS_MODEL_H_
#define RANKFAITH_MODELS_MODEL_H_

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nlohmann/json.hpp"
#include "rankfaith/data/dataset.h"

namespace rankfaith::models {

// Logistic function clamped to the open interval (0, 1).
double Sigmoid(double margin);

struct LogisticModel {
  double intercept = 0.0;
  // On the original (unstandardized) input scale, so beta_j * x_j is the
  // contribution of column j to the log-odds of default.
  std::vector<double> coefficients;
  double lambda = 0.0;
  // Per-column (mean, scale) used during fitting.
  std::vector<double> center;
  std::vector<double> scale;
  std::vector<std::string> feature_names;

  std::size_t n_features() const { return coefficients.size(); }
};

struct TreeNode {
  // -1 marks a leaf.
  int feature = -1;
  // Rows with x[feature] < threshold go left.
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // Leaf output on the margin scale (learning rate already applied).
  double value = 0.0;
  // Sum of training hessians that reached the node.
  double cover = 0.0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double Predict(std::span<const double> x) const;
  int MaxDepth() const;
  friend bool operator==(const Tree&, const Tree&) = default;
};

struct GbdtParams {
  int max_depth = 4;
  int n_rounds = 100;
  double learning_rate = 0.1;
  double min_child_weight = 1.0;
  double lambda = 1.0;  // L2 penalty on leaf values

  friend bool operator==(const GbdtParams&, const GbdtParams&) = default;
};

struct GbdtModel {
  std::vector<Tree> trees;
  double base_score = 0.0;  // log-odds
  GbdtParams params;
  std::vector<std::string> feature_names;

  std::size_t n_features() const { return feature_names.size(); }
  int n_rounds() const { return static_cast<int>(trees.size()); }
  double learning_rate() const { return params.learning_rate; }

  // Throws InvalidForest when a node has a missing child, a non-positive
  // cover, or child covers that do not add up to the parent's.
  void Validate() const;
};

using Model = std::variant<LogisticModel, GbdtModel>;

struct Prediction {
  double probability = 0.5;
  double raw_score = 0.0;  // linear predictor or margin, log-odds scale
};

// Throws DimensionMismatch when x has the wrong length.
Prediction Predict(const LogisticModel& model, std::span<const double> x);
Prediction Predict(const GbdtModel& model, std::span<const double> x);
Prediction Predict(const Model& model, std::span<const double> x);

std::vector<double> PredictProbabilities(const Model& model, const data::DenseMatrix& matrix,
                                         std::span<const std::size_t> rows);

std::size_t NumFeatures(const Model& model);
const char* ModelKindName(const Model& model);  // "logistic" / "gbdt"

// Versioned text format; see docs in README.
nlohmann::json ModelToJson(const Model& model);
Model ModelFromJson(const nlohmann::json& j);
void SaveModel(const Model& model, const std::filesystem::path& path);
Model LoadModel(const std::filesystem::path& path);

}  // namespace rankfaith::models

#endif  // RANKFAITH_MODELS_MODEL_H_
