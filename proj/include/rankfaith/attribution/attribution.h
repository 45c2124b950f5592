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

#ifndef RANKFAITH_ATTRIBUTION_ATTRIBUTION_H_
#define RANKFAITH_ATTRIBUTION_ATTRIBUTION_H_

#include <span>
#include <vector>

#include "rankfaith/data/dataset.h"
#include "rankfaith/models/model.h"

namespace rankfaith::attribution {

// Signed per-column contributions on the log-odds scale. baseline plus the
// sum of values reproduces model_output.
struct AttributionVector {
  std::vector<double> values;
  double baseline = 0.0;
  double model_output = 0.0;

  double Reconstructed() const;
};

// phi_j = beta_j * x_j on the input scale; baseline = intercept.
AttributionVector LinearContributions(const models::LogisticModel& model,
                                      std::span<const double> x);

// Exact path-dependent TreeSHAP: per tree, Shapley values of the game whose
// value for a coalition S is the cover-weighted expectation of the tree output
// with the features in S fixed at x. baseline = base_score + sum of tree
// expectations. Throws InvalidForest on a non-positive cover.
AttributionVector TreeShap(const models::GbdtModel& model, std::span<const double> x);

// Cover-weighted expected output of one tree.
double TreeExpectation(const models::Tree& tree);

AttributionVector Attribute(const models::Model& model, std::span<const double> x);

// Attributions for many rows; OpenMP-parallel over rows. Matches a serial
// loop over Attribute exactly.
std::vector<AttributionVector> AttributeBatch(const models::Model& model,
                                              const data::DenseMatrix& matrix,
                                              std::span<const std::size_t> rows);

}  // namespace rankfaith::attribution

#endif  // RANKFAITH_ATTRIBUTION_ATTRIBUTION_H_
