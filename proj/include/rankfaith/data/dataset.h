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

#ifndef RANKFAITH_DATA_DATASET_H_
#define RANKFAITH_DATA_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rankfaith/data/schema.h"
#include "rankfaith/data/table.h"

namespace rankfaith::data {

// Row-major n x m matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  // Copy of the selected rows, in the given order.
  DenseMatrix Rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// An original feature and the encoded columns it owns (its one-hot block for
// nominal features, a single column otherwise).
struct FeatureGroup {
  std::string name;
  std::vector<int> columns;

  friend bool operator==(const FeatureGroup&, const FeatureGroup&) = default;
};
using GroupIndex = std::vector<FeatureGroup>;

// Throws InvalidArgument unless `groups` partitions {0..n_cols-1}.
void ValidatePartition(const GroupIndex& groups, std::size_t n_cols);

struct EncodedDataset {
  DenseMatrix matrix;
  std::vector<int> labels;
  std::vector<std::string> encoded_names;
  GroupIndex groups;
  // Stable instance identifiers (0-based source row numbers).
  std::vector<std::int64_t> instance_ids;
  // n x m human-readable values per original feature (consolidated level
  // names for categoricals, formatted numbers otherwise).
  std::vector<std::vector<std::string>> display;

  std::size_t n_rows() const { return labels.size(); }
  std::vector<std::string> original_names() const;
  // Row position of an instance id; throws InvalidArgument when absent.
  std::size_t RowOf(std::int64_t instance_id) const;
};

struct ImputationReport {
  // Encoded column name -> training-split median used to fill missing values.
  std::map<std::string, double> medians;
  // Encoded column name -> number of cells filled.
  std::map<std::string, std::size_t> filled;
};

// Drops rows whose outcome is neither target label. Returns the kept table
// and the number of rows removed. Throws MissingColumn without the target.
std::pair<RawTable, std::size_t> KeepLabelledRows(const RawTable& raw, const TargetSpec& target);

// Encodes `raw` under `schema`. Numeric cells that are missing become NaN
// (see ImputeMedians); categorical cells are consolidated and must then hit a
// declared level, otherwise UnknownLevel is raised.
EncodedDataset ApplySchema(const RawTable& raw, const FeatureSchema& schema);

// Replaces NaN cells with the per-column median over `train_rows`.
ImputationReport ImputeMedians(EncodedDataset& ds, std::span<const std::size_t> train_rows);

// Human-readable rendering of a numeric value under a display style.
std::string FormatValue(double value, DisplayStyle style);

}  // namespace rankfaith::data

#endif  // RANKFAITH_DATA_DATASET_H_
