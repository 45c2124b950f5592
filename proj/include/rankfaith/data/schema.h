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

#ifndef RANKFAITH_DATA_SCHEMA_H_
#define RANKFAITH_DATA_SCHEMA_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"

namespace rankfaith::data {

enum class FeatureKind { kNumeric, kOrdinal, kNominal, kDrop };

// How a numeric value is rendered for humans (prompts, reports).
enum class DisplayStyle { kPlain, kMoney, kPercent, kInteger };

struct SchemaEntry {
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  // Ordinal: level -> integer code, injective.
  std::map<std::string, int> ordinal_levels;
  // Nominal: consolidated levels in declaration order (one-hot column order).
  std::vector<std::string> nominal_levels;
  // Raw level -> consolidated level (categorical kinds only).
  std::map<std::string, std::string> consolidate;
  // Numeric: suffix removed before parsing, e.g. "%".
  std::string strip;
  DisplayStyle display = DisplayStyle::kPlain;
  std::string reason;

  bool IsCategorical() const {
    return kind == FeatureKind::kOrdinal || kind == FeatureKind::kNominal;
  }
  bool HasLevel(const std::string& level) const;
};

struct TargetSpec {
  std::string column;
  std::string positive = "Charged Off";
  std::string negative = "Fully Paid";
};

struct FeatureSchema {
  static constexpr int kFormatVersion = 1;

  TargetSpec target;
  std::vector<SchemaEntry> entries;

  // Entries that become model features, in declaration order.
  std::vector<const SchemaEntry*> Features() const;
  // Throws SchemaError when an invariant is violated.
  void Validate() const;
};

FeatureSchema SchemaFromJson(const nlohmann::json& j);
nlohmann::json SchemaToJson(const FeatureSchema& schema);
FeatureSchema LoadSchema(const std::filesystem::path& path);

const char* FeatureKindName(FeatureKind kind);

}  // namespace rankfaith::data

#endif  // RANKFAITH_DATA_SCHEMA_H_
