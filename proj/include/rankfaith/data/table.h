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

#ifndef RANKFAITH_DATA_TABLE_H_
#define RANKFAITH_DATA_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankfaith::data {

enum class ColumnType { kString, kNumeric };
enum class TableFormat { kCsv };

// One column of a loaded table. An empty cell is a missing value.
struct RawColumn {
  std::string name;
  ColumnType type = ColumnType::kString;
  std::vector<std::string> cells;

  bool IsMissing(std::size_t row) const { return cells[row].empty(); }
};

struct RawTable {
  std::vector<RawColumn> columns;
  std::size_t n_rows = 0;

  std::size_t n_cols() const { return columns.size(); }
  const RawColumn* Find(std::string_view name) const;
};

enum class DropReason { kAllMissing, kZeroVariance };
const char* DropReasonName(DropReason reason);

struct DroppedColumn {
  std::string column;
  DropReason reason;
};
using DropReport = std::vector<DroppedColumn>;

// Loads a headed CSV (RFC 4180 quoting). Unquoted cells are whitespace-trimmed
// and column types are sniffed: a column is numeric when every non-missing
// cell parses as a finite number.
RawTable LoadTable(const std::filesystem::path& path,
                   TableFormat format = TableFormat::kCsv);
RawTable ParseCsv(std::string_view text);

// Removes columns whose values are all missing or whose non-missing values
// are all identical. Throws DegenerateDataset when nothing survives.
std::pair<RawTable, DropReport> DropDegenerate(RawTable raw);

// Quotes `cell` for CSV output when needed.
std::string CsvEscape(std::string_view cell);

}  // namespace rankfaith::data

#endif  // RANKFAITH_DATA_TABLE_H_
