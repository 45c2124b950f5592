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

#include "rankfaith/models/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rankfaith/errors.h"

namespace rankfaith::models {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "rankfaith-model";
constexpr int kFormatVersion = 1;

void CheckWidth(std::size_t expected, std::span<const double> x) {
  if (x.size() != expected) {
    throw DimensionMismatch("row has " + std::to_string(x.size()) + " columns, model expects " +
                            std::to_string(expected));
  }
}

}  // namespace

double Sigmoid(double margin) {
  constexpr double kLow = 0x1.0p-53;
  constexpr double kHigh = 1.0 - 0x1.0p-53;
  const double p = margin >= 0 ? 1.0 / (1.0 + std::exp(-margin))
                               : std::exp(margin) / (1.0 + std::exp(margin));
  return std::clamp(p, kLow, kHigh);
}

double Tree::Predict(std::span<const double> x) const {
  int i = 0;
  while (!nodes[i].is_leaf()) {
    i = x[nodes[i].feature] < nodes[i].threshold ? nodes[i].left : nodes[i].right;
  }
  return nodes[i].value;
}

int Tree::MaxDepth() const {
  std::vector<int> depth(nodes.size(), 0);
  int max_depth = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    depth[nodes[i].left] = depth[nodes[i].right] = depth[i] + 1;
    max_depth = std::max(max_depth, depth[i] + 1);
  }
  return max_depth;
}

void GbdtModel::Validate() const {
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const auto& nodes = trees[t].nodes;
    const auto where = [&](std::size_t i) {
      return "tree " + std::to_string(t) + " node " + std::to_string(i);
    };
    if (nodes.empty()) throw InvalidForest("tree " + std::to_string(t) + " is empty");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (!(n.cover > 0.0) || !std::isfinite(n.cover)) {
        throw InvalidForest(where(i) + ": cover must be positive");
      }
      if (n.is_leaf()) continue;
      const auto valid_child = [&](int c) {
        return c > static_cast<int>(i) && c < static_cast<int>(nodes.size());
      };
      if (!valid_child(n.left) || !valid_child(n.right) || n.left == n.right) {
        throw InvalidForest(where(i) + ": internal node needs two distinct children");
      }
      if (static_cast<std::size_t>(n.feature) >= n_features()) {
        throw InvalidForest(where(i) + ": split feature out of range");
      }
      const double sum = nodes[n.left].cover + nodes[n.right].cover;
      if (std::fabs(sum - n.cover) > 1e-9 * std::max(1.0, n.cover)) {
        throw InvalidForest(where(i) + ": child covers do not sum to parent cover");
      }
    }
  }
}

Prediction Predict(const LogisticModel& model, std::span<const double> x) {
  CheckWidth(model.n_features(), x);
  double z = model.intercept;
  for (std::size_t j = 0; j < x.size(); ++j) z += model.coefficients[j] * x[j];
  return {Sigmoid(z), z};
}

Prediction Predict(const GbdtModel& model, std::span<const double> x) {
  CheckWidth(model.n_features(), x);
  double margin = model.base_score;
  for (const auto& tree : model.trees) margin += tree.Predict(x);
  return {Sigmoid(margin), margin};
}

Prediction Predict(const Model& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return Predict(m, x); }, model);
}

std::vector<double> PredictProbabilities(const Model& model, const data::DenseMatrix& matrix,
                                         std::span<const std::size_t> rows) {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = Predict(model, matrix.row(rows[i])).probability;
  return out;
}

std::size_t NumFeatures(const Model& model) {
  return std::visit([](const auto& m) { return m.n_features(); }, model);
}

const char* ModelKindName(const Model& model) {
  return std::holds_alternative<LogisticModel>(model) ? "logistic" : "gbdt";
}

json ModelToJson(const Model& model) {
  json j = {{"format", kFormat}, {"format_version", kFormatVersion}, {"kind", ModelKindName(model)}};
  if (const auto* lr = std::get_if<LogisticModel>(&model)) {
    j["feature_names"] = lr->feature_names;
    j["intercept"] = lr->intercept;
    j["coefficients"] = lr->coefficients;
    j["lambda"] = lr->lambda;
    j["standardization"] = {{"center", lr->center}, {"scale", lr->scale}};
    return j;
  }
  const auto& gb = std::get<GbdtModel>(model);
  j["feature_names"] = gb.feature_names;
  j["base_score"] = gb.base_score;
  j["params"] = {{"max_depth", gb.params.max_depth},
                 {"n_rounds", gb.params.n_rounds},
                 {"learning_rate", gb.params.learning_rate},
                 {"min_child_weight", gb.params.min_child_weight},
                 {"lambda", gb.params.lambda}};
  json trees = json::array();
  for (const auto& tree : gb.trees) {
    json feature = json::array(), threshold = json::array(), left = json::array(),
         right = json::array(), value = json::array(), cover = json::array();
    for (const auto& n : tree.nodes) {
      feature.push_back(n.feature);
      threshold.push_back(n.threshold);
      left.push_back(n.left);
      right.push_back(n.right);
      value.push_back(n.value);
      cover.push_back(n.cover);
    }
    trees.push_back({{"feature", feature},
                     {"threshold", threshold},
                     {"left", left},
                     {"right", right},
                     {"value", value},
                     {"cover", cover}});
  }
  j["trees"] = std::move(trees);
  return j;
}

Model ModelFromJson(const json& j) {
  try {
    if (j.value("format", "") != kFormat || j.value("format_version", 0) != kFormatVersion) {
      throw FormatError("not a rankfaith model (format/version mismatch)");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "logistic") {
      LogisticModel lr;
      lr.feature_names = j.at("feature_names").get<std::vector<std::string>>();
      lr.intercept = j.at("intercept").get<double>();
      lr.coefficients = j.at("coefficients").get<std::vector<double>>();
      lr.lambda = j.value("lambda", 0.0);
      if (j.contains("standardization")) {
        lr.center = j["standardization"].at("center").get<std::vector<double>>();
        lr.scale = j["standardization"].at("scale").get<std::vector<double>>();
      }
      if (lr.coefficients.size() != lr.feature_names.size()) {
        throw FormatError("coefficient count does not match feature names");
      }
      return lr;
    }
    if (kind != "gbdt") throw FormatError("unknown model kind '" + kind + "'");
    GbdtModel gb;
    gb.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    gb.base_score = j.at("base_score").get<double>();
    const auto& p = j.at("params");
    gb.params = {p.at("max_depth").get<int>(), p.at("n_rounds").get<int>(),
                 p.at("learning_rate").get<double>(), p.at("min_child_weight").get<double>(),
                 p.at("lambda").get<double>()};
    for (const auto& t : j.at("trees")) {
      const auto feature = t.at("feature").get<std::vector<int>>();
      const auto threshold = t.at("threshold").get<std::vector<double>>();
      const auto left = t.at("left").get<std::vector<int>>();
      const auto right = t.at("right").get<std::vector<int>>();
      const auto value = t.at("value").get<std::vector<double>>();
      const auto cover = t.at("cover").get<std::vector<double>>();
      const std::size_t n = feature.size();
      if (threshold.size() != n || left.size() != n || right.size() != n || value.size() != n ||
          cover.size() != n) {
        throw FormatError("tree node arrays differ in length");
      }
      Tree tree;
      for (std::size_t i = 0; i < n; ++i) {
        tree.nodes.push_back({feature[i], threshold[i], left[i], right[i], value[i], cover[i]});
      }
      gb.trees.push_back(std::move(tree));
    }
    gb.Validate();
    return gb;
  } catch (const json::exception& ex) {
    throw FormatError(std::string("malformed model: ") + ex.what());
  }
}

void SaveModel(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << ModelToJson(model).dump(1) << "\n";
}

Model LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw FormatError(path.string() + ": " + ex.what());
  }
  return ModelFromJson(j);
}

}  // namespace rankfaith::models
