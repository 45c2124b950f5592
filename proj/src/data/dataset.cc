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

#include "rankfaith/data/dataset.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankfaith/errors.h"
#include "rankfaith/util/format.h"

namespace rankfaith::data {

DenseMatrix DenseMatrix::Rows(std::span<const std::size_t> indices) const {
  DenseMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

void ValidatePartition(const GroupIndex& groups, std::size_t n_cols) {
  std::vector<int> hits(n_cols, 0);
  for (const auto& g : groups) {
    if (g.columns.empty()) throw InvalidArgument("group '" + g.name + "' is empty");
    for (int c : g.columns) {
      if (c < 0 || static_cast<std::size_t>(c) >= n_cols) {
        throw InvalidArgument("group '" + g.name + "' references column " +
                              std::to_string(c) + " out of range");
      }
      ++hits[c];
    }
  }
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (hits[c] != 1) {
      throw InvalidArgument("column " + std::to_string(c) + " appears in " +
                            std::to_string(hits[c]) + " groups");
    }
  }
}

std::vector<std::string> EncodedDataset::original_names() const {
  std::vector<std::string> names;
  names.reserve(groups.size());
  for (const auto& g : groups) names.push_back(g.name);
  return names;
}

std::size_t EncodedDataset::RowOf(std::int64_t instance_id) const {
  // Ids are ascending source row numbers, so binary search is valid.
  const auto it = std::lower_bound(instance_ids.begin(), instance_ids.end(), instance_id);
  if (it == instance_ids.end() || *it != instance_id) {
    throw InvalidArgument("unknown instance id " + std::to_string(instance_id));
  }
  return static_cast<std::size_t>(it - instance_ids.begin());
}

std::string FormatValue(double value, DisplayStyle style) {
  if (std::isnan(value)) return "missing";
  switch (style) {
    case DisplayStyle::kMoney: return "$" + util::WithThousands(value, 2);
    case DisplayStyle::kPercent: return util::Fixed(value, 2) + "%";
    case DisplayStyle::kInteger: return util::WithThousands(value, 0);
    case DisplayStyle::kPlain: break;
  }
  std::string s = util::Fixed(value, 4);
  // Drop trailing zeros for readability: 18.2000 -> 18.2, 3.0000 -> 3.
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

namespace {

std::string Consolidated(const SchemaEntry& entry, const std::string& cell) {
  const auto it = entry.consolidate.find(cell);
  return it == entry.consolidate.end() ? cell : it->second;
}

}  // namespace

std::pair<RawTable, std::size_t> KeepLabelledRows(const RawTable& raw, const TargetSpec& target) {
  const RawColumn* outcome = raw.Find(target.column);
  if (outcome == nullptr) throw MissingColumn("target column '" + target.column + "'");
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < raw.n_rows; ++r) {
    const auto& v = outcome->cells[r];
    if (v == target.positive || v == target.negative) keep.push_back(r);
  }
  RawTable out;
  out.n_rows = keep.size();
  for (const auto& column : raw.columns) {
    RawColumn c{column.name, column.type, {}};
    c.cells.reserve(keep.size());
    for (auto r : keep) c.cells.push_back(column.cells[r]);
    out.columns.push_back(std::move(c));
  }
  return {std::move(out), raw.n_rows - keep.size()};
}

EncodedDataset ApplySchema(const RawTable& raw, const FeatureSchema& schema) {
  schema.Validate();
  const RawColumn* target = raw.Find(schema.target.column);
  if (target == nullptr) throw MissingColumn("target column '" + schema.target.column + "'");

  const auto features = schema.Features();
  std::vector<const RawColumn*> sources;
  EncodedDataset ds;
  for (const auto* entry : features) {
    const RawColumn* column = raw.Find(entry->name);
    if (column == nullptr) throw MissingColumn("schema entry '" + entry->name + "'");
    sources.push_back(column);
    FeatureGroup group{entry->name, {}};
    if (entry->kind == FeatureKind::kNominal) {
      for (const auto& level : entry->nominal_levels) {
        group.columns.push_back(static_cast<int>(ds.encoded_names.size()));
        ds.encoded_names.push_back(entry->name + "=" + level);
      }
    } else {
      group.columns.push_back(static_cast<int>(ds.encoded_names.size()));
      ds.encoded_names.push_back(entry->name);
    }
    ds.groups.push_back(std::move(group));
  }

  const std::size_t n = raw.n_rows;
  ds.matrix = DenseMatrix(n, ds.encoded_names.size());
  ds.labels.resize(n);
  ds.instance_ids.resize(n);
  ds.display.assign(n, std::vector<std::string>(features.size()));

  for (std::size_t r = 0; r < n; ++r) {
    ds.instance_ids[r] = static_cast<std::int64_t>(r);
    const std::string& outcome = target->cells[r];
    if (outcome == schema.target.positive) {
      ds.labels[r] = 1;
    } else if (outcome == schema.target.negative) {
      ds.labels[r] = 0;
    } else {
      throw NonBinaryTarget("row " + std::to_string(r) + ": outcome '" + outcome +
                            "' is neither '" + schema.target.positive + "' nor '" +
                            schema.target.negative + "'");
    }

    for (std::size_t f = 0; f < features.size(); ++f) {
      const SchemaEntry& entry = *features[f];
      const std::string& cell = sources[f]->cells[r];
      const auto& cols = ds.groups[f].columns;
      switch (entry.kind) {
        case FeatureKind::kNumeric: {
          double v = std::numeric_limits<double>::quiet_NaN();
          if (!cell.empty()) {
            std::string text = cell;
            if (!entry.strip.empty() && text.size() >= entry.strip.size() &&
                text.compare(text.size() - entry.strip.size(), entry.strip.size(),
                             entry.strip) == 0) {
              text.resize(text.size() - entry.strip.size());
            }
            if (!util::ParseDouble(text, &v)) {
              throw FormatError("row " + std::to_string(r) + ", '" + entry.name +
                                "': not a number: '" + cell + "'");
            }
          }
          ds.matrix.at(r, cols[0]) = v;
          ds.display[r][f] = FormatValue(v, entry.display);
          break;
        }
        case FeatureKind::kOrdinal: {
          const std::string level = Consolidated(entry, cell);
          const auto it = entry.ordinal_levels.find(level);
          if (it == entry.ordinal_levels.end()) {
            throw UnknownLevel("row " + std::to_string(r) + ", '" + entry.name +
                               "': level '" + cell + "' has no declared code");
          }
          ds.matrix.at(r, cols[0]) = it->second;
          ds.display[r][f] = level.empty() ? "missing" : level;
          break;
        }
        case FeatureKind::kNominal: {
          const std::string level = Consolidated(entry, cell);
          const auto it = std::find(entry.nominal_levels.begin(), entry.nominal_levels.end(), level);
          if (it == entry.nominal_levels.end()) {
            throw UnknownLevel("row " + std::to_string(r) + ", '" + entry.name +
                               "': level '" + cell + "' is not declared or consolidated");
          }
          const auto k = static_cast<std::size_t>(it - entry.nominal_levels.begin());
          for (std::size_t i = 0; i < cols.size(); ++i) {
            ds.matrix.at(r, cols[i]) = i == k ? 1.0 : 0.0;
          }
          ds.display[r][f] = level.empty() ? "missing" : level;
          break;
        }
        case FeatureKind::kDrop:
          break;
      }
    }
  }

  const auto positives = std::count(ds.labels.begin(), ds.labels.end(), 1);
  if (positives == 0 || static_cast<std::size_t>(positives) == n) {
    throw NonBinaryTarget("labels contain a single class");
  }
  return ds;
}

ImputationReport ImputeMedians(EncodedDataset& ds, std::span<const std::size_t> train_rows) {
  ImputationReport report;
  for (std::size_t c = 0; c < ds.matrix.cols(); ++c) {
    std::size_t missing = 0;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) missing += std::isnan(ds.matrix.at(r, c));
    if (missing == 0) continue;

    std::vector<double> values;
    for (std::size_t r : train_rows) {
      const double v = ds.matrix.at(r, c);
      if (!std::isnan(v)) values.push_back(v);
    }
    if (values.empty()) {
      throw DegenerateDataset("column '" + ds.encoded_names[c] +
                              "' has no observed values in the training split");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    const double median =
        values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
      if (std::isnan(ds.matrix.at(r, c))) ds.matrix.at(r, c) = median;
    }
    report.medians[ds.encoded_names[c]] = median;
    report.filled[ds.encoded_names[c]] = missing;
  }
  return report;
}

}  // namespace rankfaith::data
