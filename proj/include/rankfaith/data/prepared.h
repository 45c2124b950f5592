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

#ifndef RANKFAITH_DATA_PREPARED_H_
#define RANKFAITH_DATA_PREPARED_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rankfaith/data/dataset.h"
#include "rankfaith/data/schema.h"
#include "rankfaith/data/split.h"
#include "rankfaith/data/table.h"

namespace rankfaith::data {

// Everything produced by data preparation, and the unit persisted to a data
// directory:
//
//   dataset.json   format version, encoded names, group index, instance ids
//   matrix.csv     header of encoded names, one row per instance (%.17g)
//   labels.csv     instance_id,label
//   display.csv    header of original names, human-readable values
//   schema.json    echo of the schema used
//   split.json     seed, ratio, train and test row positions
//   prep_report.json  dropped columns and imputation medians
struct PreparedData {
  static constexpr int kFormatVersion = 1;

  EncodedDataset dataset;
  FeatureSchema schema;
  SplitIndices split;
  DropReport dropped;
  ImputationReport imputation;
  // Table columns neither in the schema nor the target.
  std::vector<std::string> unlisted_columns;
};

// Load -> drop degenerate columns -> encode -> stratified split -> impute.
// A schema entry that keeps a column found degenerate is a SchemaError.
PreparedData PrepareData(const RawTable& raw, const FeatureSchema& schema, double ratio,
                         std::uint64_t seed);

void SavePrepared(const PreparedData& data, const std::filesystem::path& dir);
PreparedData LoadPrepared(const std::filesystem::path& dir);

// Hash over the persisted files, used by run manifests.
std::string HashPrepared(const std::filesystem::path& dir);

}  // namespace rankfaith::data

#endif  // RANKFAITH_DATA_PREPARED_H_
