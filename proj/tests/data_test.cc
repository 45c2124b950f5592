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

#include <algorithm>
#include <cmath>
#include <set>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "rankfaith/data/dataset.h"
#include "rankfaith/data/prepared.h"
#include "rankfaith/data/schema.h"
#include "rankfaith/data/split.h"
#include "rankfaith/data/synthetic.h"
#include "rankfaith/data/table.h"
#include "rankfaith/errors.h"

namespace rankfaith::data {
namespace {

using ::rankfaith::testing::ReadFile;
using ::rankfaith::testing::SourceDir;
using ::rankfaith::testing::TempDir;

FeatureSchema TinySchema() {
  return SchemaFromJson(nlohmann::json::parse(R"({
    "format_version": 1,
    "target": {"column": "status", "positive": "Charged Off", "negative": "Fully Paid"},
    "features": [
      {"name": "id", "kind": "drop", "drop_reason": "identifier"},
      {"name": "amount", "kind": "numeric", "display": "money"},
      {"name": "rate", "kind": "numeric", "strip": "%", "display": "percent"},
      {"name": "grade", "kind": "ordinal", "levels": {"A": 1, "B": 2, "C": 3}},
      {"name": "home", "kind": "nominal", "levels": ["RENT", "OWN", "OTHER"],
       "consolidate": {"NONE": "OTHER", "": "OTHER"}}
    ]})"));
}

constexpr const char* kTinyCsv =
    "id,amount,rate,grade,home,status\n"
    "1,1000,10.5%,A,RENT,Fully Paid\n"
    "2,2500,13.25%,C,OWN,Charged Off\n"
    "3,,9%,B,NONE,Fully Paid\n"
    "4,4000,15%,C,,Charged Off\n"
    "5,500,7.5%,A,RENT,Fully Paid\n"
    "6,3000,11%,B,OWN,Charged Off\n";

TEST(CsvTest, QuotingAndTrimming) {
  const auto t = ParseCsv("a,b,c\n\"x, y\", 2 ,\"he said \"\"hi\"\"\"\n\n3,4,5\n");
  ASSERT_EQ(t.n_rows, 2u);
  EXPECT_EQ(t.columns[0].cells[0], "x, y");
  EXPECT_EQ(t.columns[1].cells[0], "2");
  EXPECT_EQ(t.columns[2].cells[0], "he said \"hi\"");
  EXPECT_EQ(t.columns[0].type, ColumnType::kString);
  EXPECT_EQ(t.columns[1].type, ColumnType::kNumeric);
}

TEST(CsvTest, MissingCellsKeepNumericType) {
  const auto t = ParseCsv("a,b\n1,\n,x\n2.5,y\n");
  EXPECT_EQ(t.columns[0].type, ColumnType::kNumeric);
  EXPECT_TRUE(t.columns[0].IsMissing(1));
  EXPECT_TRUE(t.columns[1].IsMissing(0));
}

TEST(CsvTest, Errors) {
  EXPECT_THROW(ParseCsv("a,b\n1,2,3\n"), RaggedRow);
  EXPECT_THROW(ParseCsv("a,b\n1\n"), RaggedRow);
  EXPECT_THROW(ParseCsv("a,b\n"), EmptyTable);
  EXPECT_THROW(ParseCsv(""), EmptyTable);
  EXPECT_THROW(ParseCsv("a,a\n1,2\n"), FormatError);
  EXPECT_THROW(LoadTable("/nonexistent/file.csv"), IoError);
}

TEST(CsvTest, EscapeRoundTrips) {
  const std::string cell = "a, \"b\"\nc";
  const auto t = ParseCsv("h\n" + CsvEscape(cell) + "\n");
  EXPECT_EQ(t.columns[0].cells[0], cell);
  EXPECT_EQ(CsvEscape("plain"), "plain");
}

TEST(DropDegenerateTest, RemovesMissingAndConstantColumns) {
  auto [kept, report] = DropDegenerate(ParseCsv("a,b,c,d\n1,,7,x\n2,,7,y\n3,,,x\n"));
  ASSERT_EQ(report.size(), 2u);
  EXPECT_EQ(report[0].column, "b");
  EXPECT_EQ(report[0].reason, DropReason::kAllMissing);
  EXPECT_EQ(report[1].column, "c");
  EXPECT_EQ(report[1].reason, DropReason::kZeroVariance);
  EXPECT_EQ(kept.n_cols(), 2u);
  EXPECT_NE(kept.Find("a"), nullptr);
  EXPECT_NE(kept.Find("d"), nullptr);
  EXPECT_THROW(DropDegenerate(ParseCsv("a,b\n1,\n1,\n")), DegenerateDataset);
}

TEST(SchemaTest, JsonRoundTrip) {
  const auto schema = TinySchema();
  const auto again = SchemaFromJson(SchemaToJson(schema));
  EXPECT_EQ(SchemaToJson(again), SchemaToJson(schema));
  ASSERT_EQ(schema.Features().size(), 4u);
  EXPECT_EQ(schema.Features()[0]->name, "amount");
}

TEST(SchemaTest, ValidateRejectsBrokenSchemas) {
  auto dup = TinySchema();
  dup.entries.push_back(dup.entries[1]);
  EXPECT_THROW(dup.Validate(), SchemaError);

  auto target = TinySchema();
  target.entries.push_back({.name = "status"});
  EXPECT_THROW(target.Validate(), SchemaError);

  auto ordinal = TinySchema();
  ordinal.entries[3].ordinal_levels["D"] = 1;
  EXPECT_THROW(ordinal.Validate(), SchemaError);

  auto consolidate = TinySchema();
  consolidate.entries[4].consolidate["MORTGAGE"] = "MORTGAGE";
  EXPECT_THROW(consolidate.Validate(), SchemaError);

  auto empty = TinySchema();
  empty.entries.resize(1);
  EXPECT_THROW(empty.Validate(), SchemaError);
}

TEST(ApplySchemaTest, EncodesEveryKind) {
  const auto ds = ApplySchema(ParseCsv(kTinyCsv), TinySchema());
  EXPECT_EQ(ds.encoded_names,
            (std::vector<std::string>{"amount", "rate", "grade", "home=RENT", "home=OWN", "home=OTHER"}));
  EXPECT_EQ(ds.original_names(), (std::vector<std::string>{"amount", "rate", "grade", "home"}));
  EXPECT_EQ(ds.labels, (std::vector<int>{0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(ds.matrix.at(1, 1), 13.25);
  EXPECT_EQ(ds.matrix.at(1, 2), 3.0);
  EXPECT_TRUE(std::isnan(ds.matrix.at(2, 0)));
  // NONE and blank both consolidate to OTHER.
  EXPECT_EQ(ds.matrix.at(2, 5), 1.0);
  EXPECT_EQ(ds.matrix.at(3, 5), 1.0);
  EXPECT_EQ(ds.matrix.at(3, 3) + ds.matrix.at(3, 4), 0.0);
  EXPECT_EQ(ds.display[1][0], "$2,500.00");
  EXPECT_EQ(ds.display[1][1], "13.25%");
  EXPECT_EQ(ds.display[1][2], "C");
  EXPECT_EQ(ds.display[2][3], "OTHER");
  EXPECT_NO_THROW(ValidatePartition(ds.groups, ds.matrix.cols()));
  EXPECT_EQ(ds.groups[3].columns, (std::vector<int>{3, 4, 5}));
}

TEST(ApplySchemaTest, FailsClosed) {
  EXPECT_THROW(ApplySchema(ParseCsv("id,amount,rate,grade,home,status\n1,1,1%,Z,RENT,Fully Paid\n"
                                    "2,1,1%,A,RENT,Charged Off\n"),
                           TinySchema()),
               UnknownLevel);
  EXPECT_THROW(ApplySchema(ParseCsv("id,amount,rate,grade,home,status\n1,1,1%,A,RENT,Current\n"
                                    "2,1,1%,A,RENT,Charged Off\n"),
                           TinySchema()),
               NonBinaryTarget);
  EXPECT_THROW(ApplySchema(ParseCsv("id,amount,rate,grade,home,status\n1,1,1%,A,RENT,Fully Paid\n"
                                    "2,1,1%,A,RENT,Fully Paid\n"),
                           TinySchema()),
               NonBinaryTarget);
  EXPECT_THROW(ApplySchema(ParseCsv("id,amount,grade,home,status\n1,1,A,RENT,Fully Paid\n"),
                           TinySchema()),
               MissingColumn);
}

TEST(KeepLabelledRowsTest, DropsOtherOutcomesInOrder) {
  const auto raw = ParseCsv(
      "id,status\n1,Fully Paid\n2,Current\n3,Charged Off\n"
      "4,Does not meet the credit policy. Status:Fully Paid\n5,Fully Paid\n");
  const auto [kept, removed] = KeepLabelledRows(raw, TargetSpec{"status"});
  EXPECT_EQ(removed, 2u);
  ASSERT_EQ(kept.n_rows, 3u);
  EXPECT_EQ(kept.Find("id")->cells, (std::vector<std::string>{"1", "3", "5"}));
  EXPECT_EQ(kept.Find("status")->cells,
            (std::vector<std::string>{"Fully Paid", "Charged Off", "Fully Paid"}));
  EXPECT_EQ(kept.Find("id")->type, raw.Find("id")->type);
  EXPECT_THROW(KeepLabelledRows(raw, TargetSpec{"outcome"}), MissingColumn);
}

TEST(FormatValueTest, Styles) {
  EXPECT_EQ(FormatValue(12345.0, DisplayStyle::kMoney), "$12,345.00");
  EXPECT_EQ(FormatValue(13.49, DisplayStyle::kPercent), "13.49%");
  EXPECT_EQ(FormatValue(1234.0, DisplayStyle::kInteger), "1,234");
  EXPECT_EQ(FormatValue(18.2, DisplayStyle::kPlain), "18.2");
  EXPECT_EQ(FormatValue(3.0, DisplayStyle::kPlain), "3");
  EXPECT_EQ(FormatValue(std::nan(""), DisplayStyle::kMoney), "missing");
}

TEST(SplitTest, StratifiedCountsAndDeterminism) {
  std::vector<int> labels(1000, 0);
  for (int i = 0; i < 1000; i += 5) labels[i] = 1;  // 200 positives
  const auto s = StratifiedSplit(labels, 0.7, 42);
  EXPECT_EQ(s.train.size(), 700u);
  EXPECT_EQ(s.test.size(), 300u);
  int train_pos = 0;
  for (auto r : s.train) train_pos += labels[r];
  EXPECT_EQ(train_pos, 140);
  EXPECT_TRUE(std::is_sorted(s.train.begin(), s.train.end()));
  std::set<std::size_t> all(s.train.begin(), s.train.end());
  for (auto r : s.test) EXPECT_TRUE(all.insert(r).second);
  EXPECT_EQ(all.size(), 1000u);
  EXPECT_EQ(s, StratifiedSplit(labels, 0.7, 42));
  EXPECT_NE(s.train, StratifiedSplit(labels, 0.7, 43).train);
}

TEST(SplitTest, Errors) {
  const std::vector<int> labels{0, 0, 0, 1};
  EXPECT_THROW(StratifiedSplit(labels, 0.7, 1), InsufficientClass);
  const std::vector<int> ok{0, 0, 1, 1};
  EXPECT_THROW(StratifiedSplit(ok, 0.0, 1), InvalidArgument);
  EXPECT_THROW(StratifiedSplit(ok, 1.0, 1), InvalidArgument);
}

TEST(SplitTest, FoldsBalanceClasses) {
  std::vector<int> labels(103, 0);
  for (int i = 0; i < 103; i += 4) labels[i] = 1;
  const auto folds = StratifiedFolds(labels, 5, 3);
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<int> counts(5, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) counts[folds[i]]++;
    }
    EXPECT_LE(*std::max_element(counts.begin(), counts.end()) -
                  *std::min_element(counts.begin(), counts.end()),
              1);
  }
}

TEST(ImputeTest, UsesTrainingMediansOnly) {
  auto ds = ApplySchema(ParseCsv(kTinyCsv), TinySchema());
  // Train rows 0, 1, 2: amounts 1000, 2500, missing -> median 1750.
  const std::vector<std::size_t> train{0, 1, 2};
  const auto report = ImputeMedians(ds, train);
  EXPECT_EQ(report.medians.at("amount"), 1750.0);
  EXPECT_EQ(report.filled.at("amount"), 1u);
  EXPECT_EQ(ds.matrix.at(2, 0), 1750.0);
  EXPECT_EQ(ds.display[2][0], "missing");
}

TEST(PrepareTest, SyntheticCorpusPrepares) {
  const auto prepared = rankfaith::testing::SyntheticPrepared(2000, 5);
  EXPECT_EQ(prepared.dataset.groups.size(), 24u);
  std::set<std::string> dropped;
  for (const auto& d : prepared.dropped) dropped.insert(d.column);
  EXPECT_TRUE(dropped.count("policy_code"));
  EXPECT_TRUE(dropped.count("next_pymnt_d"));
  for (const auto& name : prepared.dataset.encoded_names) {
    EXPECT_NE(name, "id");
    EXPECT_NE(name, "total_pymnt");
    EXPECT_NE(name, "recoveries");
  }
  for (std::size_t r = 0; r < prepared.dataset.n_rows(); ++r) {
    for (double v : prepared.dataset.matrix.row(r)) ASSERT_FALSE(std::isnan(v));
  }
  double positives = 0;
  for (int y : prepared.dataset.labels) positives += y;
  const double prevalence = positives / static_cast<double>(prepared.dataset.n_rows());
  EXPECT_GT(prevalence, 0.15);
  EXPECT_LT(prevalence, 0.35);
}

TEST(PrepareTest, SaveLoadRoundTrip) {
  const auto prepared = rankfaith::testing::SyntheticPrepared(500, 8);
  TempDir dir;
  SavePrepared(prepared, dir.path());
  const auto loaded = LoadPrepared(dir.path());
  EXPECT_EQ(loaded.dataset.matrix, prepared.dataset.matrix);
  EXPECT_EQ(loaded.dataset.labels, prepared.dataset.labels);
  EXPECT_EQ(loaded.dataset.encoded_names, prepared.dataset.encoded_names);
  EXPECT_EQ(loaded.dataset.groups, prepared.dataset.groups);
  EXPECT_EQ(loaded.dataset.instance_ids, prepared.dataset.instance_ids);
  EXPECT_EQ(loaded.dataset.display, prepared.dataset.display);
  EXPECT_EQ(loaded.split, prepared.split);
  EXPECT_EQ(SchemaToJson(loaded.schema), SchemaToJson(prepared.schema));
  EXPECT_EQ(HashPrepared(dir.path()), HashPrepared(dir.path()));
}

TEST(PrepareTest, SchemaKeepingDegenerateColumnIsAnError) {
  auto schema = TinySchema();
  EXPECT_THROW(PrepareData(ParseCsv("id,amount,rate,grade,home,status\n"
                                    "1,5,1%,A,RENT,Fully Paid\n2,5,2%,B,OWN,Charged Off\n"
                                    "3,5,3%,A,RENT,Fully Paid\n4,5,4%,C,OWN,Charged Off\n"),
                           schema, 0.5, 1),
               SchemaError);
}

TEST(SyntheticTest, GeneratorIsDeterministic) {
  EXPECT_EQ(GenerateSyntheticLoans(300, 1), GenerateSyntheticLoans(300, 1));
  EXPECT_NE(GenerateSyntheticLoans(300, 1), GenerateSyntheticLoans(300, 2));
}

TEST(SyntheticTest, BundledCorpusMatchesGenerator) {
  EXPECT_EQ(ReadFile(SourceDir() / "data/synthetic/loans.csv"),
            GenerateSyntheticLoans(kSyntheticRows, kSyntheticSeed));
  EXPECT_EQ(ReadFile(SourceDir() / "data/synthetic/schema.json"),
            SchemaToJson(SyntheticLoanSchema()).dump(2) + "\n");
}

TEST(SyntheticTest, BundledRealDataSchemaIsValid) {
  const auto schema = LoadSchema(SourceDir() / "data/schemas/lendingclub_2007_2011.json");
  EXPECT_EQ(schema.target.column, "loan_status");
  EXPECT_EQ(schema.Features().size(), 22u);
  for (const auto* e : schema.Features()) {
    EXPECT_NE(e->name, "total_pymnt");
    EXPECT_NE(e->name, "recoveries");
  }
}

}  // namespace
}  // namespace rankfaith::data
