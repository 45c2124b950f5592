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

#include "rankfaith/data/table.h"

#include <fstream>
#include <set>
#include <sstream>

#include "rankfaith/errors.h"
#include "rankfaith/util/format.h"

namespace rankfaith::data {

namespace {

// Splits CSV text into records of fields. Handles quoted fields containing
// separators, doubled quotes and embedded newlines.
std::vector<std::vector<std::string>> ParseRecords(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;
  bool any_content = false;

  auto end_field = [&] {
    record.push_back(field_quoted ? field : util::Trim(field));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    // Skip blank lines.
    if (!(record.size() == 1 && record[0].empty() && !any_content)) {
      records.push_back(std::move(record));
    }
    record.clear();
    any_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_quoted = true;
        any_content = true;
        field.clear();
        break;
      case ',':
        any_content = true;
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        if (!field_quoted) field.push_back(c);
        if (c != ' ' && c != '\t') any_content = true;
    }
  }
  if (in_quotes) throw FormatError("unterminated quoted field");
  if (!field.empty() || !record.empty() || field_quoted) end_record();
  return records;
}

bool IsNumericColumn(const std::vector<std::string>& cells) {
  bool any = false;
  for (const auto& cell : cells) {
    if (cell.empty()) continue;
    double v;
    if (!util::ParseDouble(cell, &v)) return false;
    any = true;
  }
  return any;
}

}  // namespace

const RawColumn* RawTable::Find(std::string_view name) const {
  for (const auto& column : columns) {
    if (column.name == name) return &column;
  }
  return nullptr;
}

const char* DropReasonName(DropReason reason) {
  return reason == DropReason::kAllMissing ? "all_missing" : "zero_variance";
}

RawTable ParseCsv(std::string_view text) {
  auto records = ParseRecords(text);
  if (records.empty()) throw EmptyTable("no header row");
  const auto& header = records.front();
  if (records.size() == 1) throw EmptyTable("header only, no data rows");

  RawTable table;
  table.n_rows = records.size() - 1;
  table.columns.resize(header.size());
  std::set<std::string> seen;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!seen.insert(header[c]).second) {
      throw FormatError("duplicate column name '" + header[c] + "'");
    }
    table.columns[c].name = header[c];
    table.columns[c].cells.reserve(table.n_rows);
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw RaggedRow("row " + std::to_string(r) + " has " +
                      std::to_string(records[r].size()) + " fields, header has " +
                      std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      table.columns[c].cells.push_back(std::move(records[r][c]));
    }
  }
  for (auto& column : table.columns) {
    column.type = IsNumericColumn(column.cells) ? ColumnType::kNumeric
                                                : ColumnType::kString;
  }
  return table;
}

RawTable LoadTable(const std::filesystem::path& path, TableFormat format) {
  (void)format;  // CSV is the only format.
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str());
}

std::pair<RawTable, DropReport> DropDegenerate(RawTable raw) {
  DropReport report;
  RawTable kept;
  kept.n_rows = raw.n_rows;
  for (auto& column : raw.columns) {
    const std::string* first = nullptr;
    double first_value = 0.0;
    bool varies = false;
    for (const auto& cell : column.cells) {
      if (cell.empty()) continue;
      if (first == nullptr) {
        first = &cell;
        if (column.type == ColumnType::kNumeric) util::ParseDouble(cell, &first_value);
        continue;
      }
      if (column.type == ColumnType::kNumeric) {
        double v;
        util::ParseDouble(cell, &v);
        if (v != first_value) varies = true;
      } else if (cell != *first) {
        varies = true;
      }
      if (varies) break;
    }
    if (first == nullptr) {
      report.push_back({column.name, DropReason::kAllMissing});
    } else if (!varies) {
      report.push_back({column.name, DropReason::kZeroVariance});
    } else {
      kept.columns.push_back(std::move(column));
    }
  }
  if (kept.columns.empty()) {
    throw DegenerateDataset("every column is all-missing or constant");
  }
  return {std::move(kept), std::move(report)};
}

std::string CsvEscape(std::string_view cell) {
  const bool needs_quotes =
      cell.find_first_of(",\"\n\r") != std::string_view::npos ||
      (!cell.empty() && (cell.front() == ' ' || cell.back() == ' '));
  if (!needs_quotes) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace rankfaith::data
