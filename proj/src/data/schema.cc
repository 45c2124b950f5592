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

#include "rankfaith/data/schema.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "rankfaith/errors.h"

namespace rankfaith::data {

using nlohmann::json;

namespace {

FeatureKind ParseKind(const std::string& s) {
  if (s == "numeric") return FeatureKind::kNumeric;
  if (s == "ordinal") return FeatureKind::kOrdinal;
  if (s == "nominal") return FeatureKind::kNominal;
  if (s == "drop") return FeatureKind::kDrop;
  throw SchemaError("unknown kind '" + s + "'");
}

DisplayStyle ParseDisplay(const std::string& s) {
  if (s == "plain") return DisplayStyle::kPlain;
  if (s == "money") return DisplayStyle::kMoney;
  if (s == "percent") return DisplayStyle::kPercent;
  if (s == "integer") return DisplayStyle::kInteger;
  throw SchemaError("unknown display style '" + s + "'");
}

const char* DisplayName(DisplayStyle style) {
  switch (style) {
    case DisplayStyle::kMoney: return "money";
    case DisplayStyle::kPercent: return "percent";
    case DisplayStyle::kInteger: return "integer";
    case DisplayStyle::kPlain: break;
  }
  return "plain";
}

}  // namespace

const char* FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kNumeric: return "numeric";
    case FeatureKind::kOrdinal: return "ordinal";
    case FeatureKind::kNominal: return "nominal";
    case FeatureKind::kDrop: return "drop";
  }
  return "?";
}

bool SchemaEntry::HasLevel(const std::string& level) const {
  if (kind == FeatureKind::kOrdinal) return ordinal_levels.count(level) > 0;
  if (kind == FeatureKind::kNominal) {
    return std::find(nominal_levels.begin(), nominal_levels.end(), level) !=
           nominal_levels.end();
  }
  return false;
}

std::vector<const SchemaEntry*> FeatureSchema::Features() const {
  std::vector<const SchemaEntry*> out;
  for (const auto& e : entries) {
    if (e.kind != FeatureKind::kDrop) out.push_back(&e);
  }
  return out;
}

void FeatureSchema::Validate() const {
  if (target.column.empty()) throw SchemaError("target column not set");
  if (target.positive == target.negative) {
    throw SchemaError("target outcome labels must differ");
  }
  std::set<std::string> names;
  bool any_feature = false;
  for (const auto& e : entries) {
    if (e.name.empty()) throw SchemaError("entry with empty name");
    if (!names.insert(e.name).second) {
      throw SchemaError("duplicate entry '" + e.name + "'");
    }
    if (e.name == target.column) {
      throw SchemaError("target column '" + e.name + "' listed as a feature");
    }
    if (e.kind != FeatureKind::kDrop) any_feature = true;
    if (e.kind == FeatureKind::kOrdinal) {
      if (e.ordinal_levels.empty()) throw SchemaError(e.name + ": ordinal without levels");
      std::set<int> codes;
      for (const auto& [level, code] : e.ordinal_levels) {
        if (!codes.insert(code).second) {
          throw SchemaError(e.name + ": ordinal map is not injective (code " +
                            std::to_string(code) + ")");
        }
      }
    }
    if (e.kind == FeatureKind::kNominal) {
      if (e.nominal_levels.empty()) throw SchemaError(e.name + ": nominal without levels");
      std::set<std::string> unique(e.nominal_levels.begin(), e.nominal_levels.end());
      if (unique.size() != e.nominal_levels.size()) {
        throw SchemaError(e.name + ": duplicate nominal level");
      }
    }
    if (!e.consolidate.empty() && !e.IsCategorical()) {
      throw SchemaError(e.name + ": consolidation on a non-categorical entry");
    }
    for (const auto& [raw, target_level] : e.consolidate) {
      if (!e.HasLevel(target_level)) {
        throw SchemaError(e.name + ": consolidation target '" + target_level +
                          "' is not a declared level");
      }
    }
  }
  if (!any_feature) throw SchemaError("schema has no non-drop entries");
}

FeatureSchema SchemaFromJson(const json& j) {
  FeatureSchema schema;
  try {
    const int version = j.value("format_version", FeatureSchema::kFormatVersion);
    if (version != FeatureSchema::kFormatVersion) {
      throw SchemaError("unsupported schema format_version " + std::to_string(version));
    }
    const auto& t = j.at("target");
    schema.target.column = t.at("column").get<std::string>();
    schema.target.positive = t.value("positive", schema.target.positive);
    schema.target.negative = t.value("negative", schema.target.negative);
    for (const auto& f : j.at("features")) {
      SchemaEntry e;
      e.name = f.at("name").get<std::string>();
      e.kind = ParseKind(f.at("kind").get<std::string>());
      if (f.contains("levels")) {
        const auto& levels = f.at("levels");
        if (e.kind == FeatureKind::kOrdinal) {
          if (!levels.is_object()) throw SchemaError(e.name + ": ordinal levels must be an object");
          for (const auto& [level, code] : levels.items()) {
            e.ordinal_levels[level] = code.get<int>();
          }
        } else if (e.kind == FeatureKind::kNominal) {
          e.nominal_levels = levels.get<std::vector<std::string>>();
        } else {
          throw SchemaError(e.name + ": levels only apply to categorical kinds");
        }
      }
      if (f.contains("consolidate")) {
        e.consolidate = f.at("consolidate").get<std::map<std::string, std::string>>();
      }
      e.strip = f.value("strip", "");
      if (f.contains("display")) e.display = ParseDisplay(f.at("display").get<std::string>());
      e.reason = f.value(e.kind == FeatureKind::kDrop ? "drop_reason" : "reason", "");
      schema.entries.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    throw SchemaError(std::string("malformed schema: ") + ex.what());
  }
  schema.Validate();
  return schema;
}

json SchemaToJson(const FeatureSchema& schema) {
  json features = json::array();
  for (const auto& e : schema.entries) {
    json f = {{"name", e.name}, {"kind", FeatureKindName(e.kind)}};
    if (e.kind == FeatureKind::kOrdinal) f["levels"] = e.ordinal_levels;
    if (e.kind == FeatureKind::kNominal) f["levels"] = e.nominal_levels;
    if (!e.consolidate.empty()) f["consolidate"] = e.consolidate;
    if (!e.strip.empty()) f["strip"] = e.strip;
    if (e.display != DisplayStyle::kPlain) f["display"] = DisplayName(e.display);
    if (!e.reason.empty()) f[e.kind == FeatureKind::kDrop ? "drop_reason" : "reason"] = e.reason;
    features.push_back(std::move(f));
  }
  return {{"format_version", FeatureSchema::kFormatVersion},
          {"target",
           {{"column", schema.target.column},
            {"positive", schema.target.positive},
            {"negative", schema.target.negative}}},
          {"features", std::move(features)}};
}

FeatureSchema LoadSchema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read schema " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw SchemaError(path.string() + ": " + ex.what());
  }
  return SchemaFromJson(j);
}

}  // namespace rankfaith::data
