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

#include "rankfaith/data/prepared.h"

#include <cstdio>
#include <fstream>
#include <set>

#include "nlohmann/json.hpp"
#include "rankfaith/errors.h"
#include "rankfaith/util/hash.h"

namespace rankfaith::data {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kFiles[] = {"dataset.json", "matrix.csv",  "labels.csv",
                                  "display.csv",  "schema.json", "split.json",
                                  "prep_report.json"};

std::string Repr(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void WriteFile(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
}

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw FormatError(path.string() + ": " + ex.what());
  }
}

}  // namespace

PreparedData PrepareData(const RawTable& raw, const FeatureSchema& schema, double ratio,
                         std::uint64_t seed) {
  PreparedData out;
  out.schema = schema;
  auto [kept, dropped] = DropDegenerate(raw);
  out.dropped = dropped;
  for (const auto* entry : schema.Features()) {
    for (const auto& d : dropped) {
      if (d.column == entry->name) {
        throw SchemaError("schema keeps '" + entry->name + "' but the column is " +
                          DropReasonName(d.reason));
      }
    }
  }
  std::set<std::string> listed{schema.target.column};
  for (const auto& e : schema.entries) listed.insert(e.name);
  for (const auto& c : kept.columns) {
    if (!listed.count(c.name)) out.unlisted_columns.push_back(c.name);
  }

  out.dataset = ApplySchema(kept, schema);
  out.split = StratifiedSplit(out.dataset.labels, ratio, seed);
  out.imputation = ImputeMedians(out.dataset, out.split.train);
  return out;
}

void SavePrepared(const PreparedData& data, const fs::path& dir) {
  fs::create_directories(dir);
  const auto& ds = data.dataset;

  json groups = json::array();
  for (const auto& g : ds.groups) groups.push_back({{"name", g.name}, {"columns", g.columns}});
  const json meta = {{"format_version", PreparedData::kFormatVersion},
                     {"n_rows", ds.n_rows()},
                     {"encoded_names", ds.encoded_names},
                     {"groups", groups},
                     {"instance_ids", ds.instance_ids}};
  WriteFile(dir / "dataset.json", meta.dump(1) + "\n");

  std::string matrix;
  for (std::size_t c = 0; c < ds.encoded_names.size(); ++c) {
    matrix += (c ? "," : "") + CsvEscape(ds.encoded_names[c]);
  }
  matrix += "\n";
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    const auto row = ds.matrix.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) matrix += (c ? "," : "") + Repr(row[c]);
    matrix += "\n";
  }
  WriteFile(dir / "matrix.csv", matrix);

  std::string labels = "instance_id,label\n";
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    labels += std::to_string(ds.instance_ids[r]) + "," + std::to_string(ds.labels[r]) + "\n";
  }
  WriteFile(dir / "labels.csv", labels);

  std::string display;
  for (std::size_t g = 0; g < ds.groups.size(); ++g) {
    display += (g ? "," : "") + CsvEscape(ds.groups[g].name);
  }
  display += "\n";
  for (const auto& row : ds.display) {
    for (std::size_t g = 0; g < row.size(); ++g) display += (g ? "," : "") + CsvEscape(row[g]);
    display += "\n";
  }
  WriteFile(dir / "display.csv", display);

  WriteFile(dir / "schema.json", SchemaToJson(data.schema).dump(1) + "\n");
  WriteFile(dir / "split.json", json({{"seed", data.split.seed},
                                      {"ratio", data.split.ratio},
                                      {"train", data.split.train},
                                      {"test", data.split.test}})
                                    .dump() +
                                    "\n");

  json dropped = json::array();
  for (const auto& d : data.dropped) {
    dropped.push_back({{"column", d.column}, {"reason", DropReasonName(d.reason)}});
  }
  WriteFile(dir / "prep_report.json",
            json({{"dropped", dropped},
                  {"imputed_medians", data.imputation.medians},
                  {"imputed_counts", data.imputation.filled},
                  {"unlisted_columns", data.unlisted_columns}})
                    .dump(1) +
                "\n");
}

PreparedData LoadPrepared(const fs::path& dir) {
  PreparedData out;
  auto& ds = out.dataset;
  const json meta = ReadJson(dir / "dataset.json");
  if (meta.value("format_version", 0) != PreparedData::kFormatVersion) {
    throw FormatError(dir.string() + ": unsupported dataset format_version");
  }
  ds.encoded_names = meta.at("encoded_names").get<std::vector<std::string>>();
  for (const auto& g : meta.at("groups")) {
    ds.groups.push_back({g.at("name").get<std::string>(), g.at("columns").get<std::vector<int>>()});
  }
  ValidatePartition(ds.groups, ds.encoded_names.size());
  ds.instance_ids = meta.at("instance_ids").get<std::vector<std::int64_t>>();
  const std::size_t n = meta.at("n_rows").get<std::size_t>();

  const RawTable matrix = LoadTable(dir / "matrix.csv");
  if (matrix.n_rows != n || matrix.n_cols() != ds.encoded_names.size()) {
    throw FormatError("matrix.csv shape does not match dataset.json");
  }
  ds.matrix = DenseMatrix(n, matrix.n_cols());
  for (std::size_t c = 0; c < matrix.n_cols(); ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      ds.matrix.at(r, c) = std::stod(matrix.columns[c].cells[r]);
    }
  }

  const RawTable labels = LoadTable(dir / "labels.csv");
  if (labels.n_rows != n) throw FormatError("labels.csv row count mismatch");
  ds.labels.resize(n);
  for (std::size_t r = 0; r < n; ++r) ds.labels[r] = std::stoi(labels.columns[1].cells[r]);

  const RawTable display = LoadTable(dir / "display.csv");
  if (display.n_rows != n || display.n_cols() != ds.groups.size()) {
    throw FormatError("display.csv shape mismatch");
  }
  ds.display.assign(n, std::vector<std::string>(ds.groups.size()));
  for (std::size_t g = 0; g < ds.groups.size(); ++g) {
    for (std::size_t r = 0; r < n; ++r) ds.display[r][g] = display.columns[g].cells[r];
  }

  out.schema = SchemaFromJson(ReadJson(dir / "schema.json"));
  const json split = ReadJson(dir / "split.json");
  out.split.seed = split.at("seed").get<std::uint64_t>();
  out.split.ratio = split.at("ratio").get<double>();
  out.split.train = split.at("train").get<std::vector<std::size_t>>();
  out.split.test = split.at("test").get<std::vector<std::size_t>>();

  const json report = ReadJson(dir / "prep_report.json");
  for (const auto& d : report.at("dropped")) {
    out.dropped.push_back({d.at("column").get<std::string>(),
                           d.at("reason").get<std::string>() == "all_missing"
                               ? DropReason::kAllMissing
                               : DropReason::kZeroVariance});
  }
  out.imputation.medians = report.at("imputed_medians").get<std::map<std::string, double>>();
  out.imputation.filled = report.at("imputed_counts").get<std::map<std::string, std::size_t>>();
  out.unlisted_columns = report.at("unlisted_columns").get<std::vector<std::string>>();
  return out;
}

std::string HashPrepared(const fs::path& dir) {
  std::string joined;
  for (const char* name : kFiles) joined += std::string(name) + ":" + util::Sha256File(dir / name) + "\n";
  return util::Sha256Hex(joined);
}

}  // namespace rankfaith::data
