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

// Command-line entry point.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "rankfaith/attribution/attribution.h"
#include "rankfaith/attribution/ranking.h"
#include "rankfaith/data/prepared.h"
#include "rankfaith/data/synthetic.h"
#include "rankfaith/errors.h"
#include "rankfaith/harness/plan.h"
#include "rankfaith/harness/report.h"
#include "rankfaith/harness/runner.h"
#include "rankfaith/harness/sampling.h"
#include "rankfaith/models/gbdt.h"
#include "rankfaith/models/logistic.h"
#include "rankfaith/models/metrics.h"
#include "rankfaith/models/model.h"
#include "rankfaith/util/format.h"
#include "rankfaith/version.h"

namespace rf = rankfaith;
namespace fs = std::filesystem;

namespace {

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rf::IoError("cannot write " + path.string());
  out << text;
}

// Rows of the prepared data named by `spec`: "train", "test", "all", or a
// comma list of instance ids and inclusive id ranges such as "3,10-12".
std::vector<std::size_t> ResolveRows(const rf::data::PreparedData& data, const std::string& spec) {
  if (spec == "train") return data.split.train;
  if (spec == "test") return data.split.test;
  std::vector<std::size_t> rows;
  if (spec == "all") {
    for (std::size_t r = 0; r < data.dataset.n_rows(); ++r) rows.push_back(r);
    return rows;
  }
  for (const auto& part : rf::util::Split(spec, ',')) {
    const auto item = rf::util::Trim(part);
    const auto dash = item.find('-', 1);
    try {
      if (dash == std::string::npos) {
        rows.push_back(data.dataset.RowOf(std::stoll(item)));
      } else {
        const auto lo = std::stoll(item.substr(0, dash));
        const auto hi = std::stoll(item.substr(dash + 1));
        for (auto id = lo; id <= hi; ++id) rows.push_back(data.dataset.RowOf(id));
      }
    } catch (const std::logic_error&) {
      throw rf::InvalidArgument("bad row spec '" + item + "'");
    }
  }
  return rows;
}

int GenSynthetic(std::size_t rows, std::uint64_t seed, const fs::path& csv, const fs::path& schema) {
  WriteText(csv, rf::data::GenerateSyntheticLoans(rows, seed));
  WriteText(schema, rf::data::SchemaToJson(rf::data::SyntheticLoanSchema()).dump(2) + "\n");
  std::cout << "wrote " << rows << " rows to " << csv.string() << "\n";
  return 0;
}

int PrepareData(const fs::path& csv, const fs::path& schema_path, double ratio, std::uint64_t seed,
                bool labelled_only, const fs::path& out) {
  auto raw = rf::data::LoadTable(csv);
  const auto schema = rf::data::LoadSchema(schema_path);
  if (labelled_only) {
    auto [kept, removed] = rf::data::KeepLabelledRows(raw, schema.target);
    raw = std::move(kept);
    std::cout << "removed " << removed << " rows with another outcome\n";
  }
  const auto prepared = rf::data::PrepareData(raw, schema, ratio, seed);
  rf::data::SavePrepared(prepared, out);
  std::size_t positives = 0;
  for (int y : prepared.dataset.labels) positives += static_cast<std::size_t>(y);
  std::cout << "rows " << prepared.dataset.n_rows() << ", positives " << positives << ", features "
            << prepared.dataset.groups.size() << " (" << prepared.dataset.encoded_names.size()
            << " encoded), train " << prepared.split.train.size() << ", test "
            << prepared.split.test.size() << "\n";
  for (const auto& d : prepared.dropped) {
    std::cout << "dropped " << d.column << ": " << rf::data::DropReasonName(d.reason) << "\n";
  }
  for (const auto& c : prepared.unlisted_columns) std::cout << "ignored unlisted column " << c << "\n";
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

struct TrainArgs {
  std::string model;
  fs::path data;
  fs::path out;
  std::uint64_t seed = 42;
  int folds = 5;
  int trials = 30;
  std::vector<double> lambdas;
};

int Train(const TrainArgs& args) {
  const auto data = rf::data::LoadPrepared(args.data);
  const auto& rows = data.split.train;
  nlohmann::json training = {{"seed", args.seed}, {"folds", args.folds}};
  rf::models::Model model;
  if (args.model == "logistic") {
    const auto grid = args.lambdas.empty() ? rf::models::DefaultLambdaGrid() : args.lambdas;
    auto result = rf::models::TrainLogistic(data.dataset, rows, grid, args.folds, args.seed);
    for (const auto& s : result.cv) {
      training["cv"].push_back({{"lambda", s.lambda}, {"mean_pr_auc", s.mean_pr_auc}});
      std::cout << "lambda " << s.lambda << ": cv PR-AUC " << rf::util::Fixed(s.mean_pr_auc, 4) << "\n";
    }
    std::cout << "selected lambda " << result.model.lambda << "\n";
    model = std::move(result.model);
  } else if (args.model == "gbdt") {
    rf::models::GbdtSearchSpace space;
    space.trials = args.trials;
    auto result = rf::models::TrainGbdt(data.dataset, rows, space, args.folds, args.seed);
    for (const auto& t : result.trials) {
      training["cv"].push_back({{"max_depth", t.params.max_depth},
                                {"n_rounds", t.params.n_rounds},
                                {"learning_rate", t.params.learning_rate},
                                {"min_child_weight", t.params.min_child_weight},
                                {"lambda", t.params.lambda},
                                {"mean_pr_auc", t.mean_pr_auc}});
    }
    const auto& p = result.model.params;
    std::cout << "selected depth " << p.max_depth << ", rounds " << p.n_rounds << ", learning rate "
              << rf::util::Fixed(p.learning_rate, 4) << ", min child weight "
              << rf::util::Fixed(p.min_child_weight, 3) << ", lambda " << rf::util::Fixed(p.lambda, 3)
              << "\n";
    model = std::move(result.model);
  } else {
    throw rf::InvalidArgument("unknown model '" + args.model + "'");
  }
  auto j = rf::models::ModelToJson(model);
  j["training"] = std::move(training);
  WriteText(args.out, j.dump(2) + "\n");
  std::cout << "wrote " << args.out.string() << "\n";
  return 0;
}

int Evaluate(const fs::path& model_path, const fs::path& data_dir, const std::string& rows_spec,
             double threshold) {
  const auto data = rf::data::LoadPrepared(data_dir);
  const auto model = rf::models::LoadModel(model_path);
  const auto rows = ResolveRows(data, rows_spec);
  const auto p = rf::models::PredictProbabilities(model, data.dataset.matrix, rows);
  std::vector<int> y;
  for (auto r : rows) y.push_back(data.dataset.labels[r]);
  const auto m = rf::models::Evaluate(p, y, threshold);
  nlohmann::json out = {{"model", rf::models::ModelKindName(model)},
                        {"rows", rows.size()},
                        {"threshold", threshold},
                        {"pr_auc", m.pr_auc},
                        {"macro_f1", m.macro_f1},
                        {"ks", m.ks},
                        {"cells", nlohmann::json::object()}};
  for (auto c : rf::models::ConfusionCells(p, y, threshold)) {
    auto& n = out["cells"][rf::models::CellName(c)];
    n = n.is_null() ? 1 : n.get<int>() + 1;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int Attribute(const fs::path& model_path, const fs::path& data_dir, const std::string& rows_spec,
              const fs::path& out_path) {
  const auto data = rf::data::LoadPrepared(data_dir);
  const auto model = rf::models::LoadModel(model_path);
  const auto rows = ResolveRows(data, rows_spec);
  const auto attributions = rf::attribution::AttributeBatch(model, data.dataset.matrix, rows);
  std::string text;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& a = attributions[i];
    const auto ranking = rf::attribution::RankFeatures(
        rf::attribution::GroupAttributions(a, data.dataset.groups));
    nlohmann::json ranked = nlohmann::json::array();
    for (const auto& f : ranking) ranked.push_back({{"name", f.name}, {"value", f.value}});
    nlohmann::json line = {{"instance_id", data.dataset.instance_ids[rows[i]]},
                           {"baseline", a.baseline},
                           {"model_output", a.model_output},
                           {"encoded", a.values},
                           {"ranking", ranked}};
    text += line.dump() + "\n";
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    WriteText(out_path, text);
    std::cout << "wrote " << rows.size() << " attributions to " << out_path.string() << "\n";
  }
  return 0;
}

int Sample(const fs::path& model_path, const fs::path& data_dir, std::size_t per_cell,
           double threshold, std::uint64_t seed) {
  const auto data = rf::data::LoadPrepared(data_dir);
  const auto model = rf::models::LoadModel(model_path);
  const auto view = rf::harness::ViewTestSplit(data, model);
  const auto sample = rf::harness::StratifiedSample(view.test_ids, view.test_labels,
                                                    view.test_probabilities, threshold, per_cell, seed);
  nlohmann::json out = {{"cell_counts", sample.cell_counts}, {"ids", sample.by_cell}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int Run(int rq, const fs::path& plan_path, const std::string& mode) {
  const auto plan = rf::harness::LoadPlan(plan_path);
  const auto result = rf::harness::RunExperiment(plan, rq, rf::llm::TransportModeFromName(mode));
  std::cout << "wrote " << result.records.size() << " records to " << result.records_path.string()
            << " (" << result.manifest["n_failed"].get<std::size_t>() << " failed, "
            << result.manifest["n_resumed"].get<std::size_t>() << " resumed)\n";
  return 0;
}

int Report(const fs::path& records, const fs::path& out) {
  const auto report = rf::harness::WriteReport(records, out.empty() ? records : out);
  std::cout << report.markdown;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faithfulness of LLM renderings of feature-attribution rankings"};
  app.set_version_flag("--version", std::string(rf::kVersion));
  app.require_subcommand(1);

  std::size_t rows = rf::data::kSyntheticRows;
  std::uint64_t seed = rf::data::kSyntheticSeed;
  fs::path csv = "data/synthetic/loans.csv", schema = "data/synthetic/schema.json";
  auto* gen = app.add_subcommand("gen-synthetic", "Write the synthetic loan corpus and its schema");
  gen->add_option("--rows", rows, "Number of rows")->capture_default_str();
  gen->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen->add_option("--out-csv", csv, "CSV output path")->capture_default_str();
  gen->add_option("--out-schema", schema, "Schema output path")->capture_default_str();

  fs::path prep_csv, prep_schema, prep_out;
  double ratio = 0.7;
  std::uint64_t split_seed = 42;
  auto* prep = app.add_subcommand("prepare-data", "Clean, encode, split and impute a loan table");
  prep->add_option("--data", prep_csv, "Input CSV")->required();
  prep->add_option("--schema", prep_schema, "Feature schema JSON")->required();
  prep->add_option("--train-ratio", ratio, "Training share per class")->capture_default_str();
  prep->add_option("--seed", split_seed, "Split seed")->capture_default_str();
  prep->add_option("--out", prep_out, "Output data directory")->required();
  bool labelled_only = false;
  prep->add_flag("--labelled-only", labelled_only,
                 "Drop rows whose outcome is neither target label instead of failing");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Fit a base model on the training split");
  train->add_option("--model", train_args.model, "logistic or gbdt")
      ->required()
      ->check(CLI::IsMember({"logistic", "gbdt"}));
  train->add_option("--data", train_args.data, "Prepared data directory")->required();
  train->add_option("--out", train_args.out, "Model output path")->required();
  train->add_option("--seed", train_args.seed, "CV and search seed")->capture_default_str();
  train->add_option("--folds", train_args.folds, "CV folds")->capture_default_str();
  train->add_option("--trials", train_args.trials, "GBDT random-search trials")->capture_default_str();
  train->add_option("--lambdas", train_args.lambdas, "Logistic L2 grid");

  fs::path model_path, data_dir, out_path;
  std::string rows_spec = "test";
  double threshold = 0.5;
  auto* evaluate = app.add_subcommand("evaluate", "PR-AUC, macro-F1, KS and confusion cells");
  evaluate->add_option("--model", model_path, "Model file")->required();
  evaluate->add_option("--data", data_dir, "Prepared data directory")->required();
  evaluate->add_option("--rows", rows_spec, "train, test, all, or instance ids")->capture_default_str();
  evaluate->add_option("--threshold", threshold, "Decision threshold")->capture_default_str();

  auto* attribute = app.add_subcommand("attribute", "Per-instance attributions and rankings");
  attribute->add_option("--model", model_path, "Model file")->required();
  attribute->add_option("--data", data_dir, "Prepared data directory")->required();
  attribute->add_option("--rows", rows_spec, "train, test, all, or instance ids")->capture_default_str();
  attribute->add_option("--out", out_path, "JSONL output (stdout when omitted)");

  std::size_t per_cell = 50;
  std::uint64_t sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "Stratified TP/TN/FP/FN sample of the test split");
  sample->add_option("--model", model_path, "Model file")->required();
  sample->add_option("--data", data_dir, "Prepared data directory")->required();
  sample->add_option("--per-cell", per_cell, "Instances per cell")->capture_default_str();
  sample->add_option("--threshold", threshold, "Decision threshold")->capture_default_str();
  sample->add_option("--seed", sample_seed, "Sampling seed")->capture_default_str();

  int rq = 1;
  fs::path plan_path;
  std::string mode = "replay";
  auto* run = app.add_subcommand("run", "Run an experiment plan");
  run->add_option("--rq", rq, "1 (translator) or 2 (zero/few-shot)")->required()->check(CLI::Range(1, 2));
  run->add_option("--plan", plan_path, "Plan JSON")->required();
  run->add_option("--mode", mode, "live, record or replay")
      ->capture_default_str()
      ->check(CLI::IsMember({"live", "record", "replay"}));

  fs::path records_dir, report_out;
  auto* report = app.add_subcommand("report", "Summary tables from persisted records");
  report->add_option("--records", records_dir, "Run output directory")->required();
  report->add_option("--out", report_out, "Report directory (defaults to --records)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return GenSynthetic(rows, seed, csv, schema);
    if (*prep) return PrepareData(prep_csv, prep_schema, ratio, split_seed, labelled_only, prep_out);
    if (*train) return Train(train_args);
    if (*evaluate) return Evaluate(model_path, data_dir, rows_spec, threshold);
    if (*attribute) return Attribute(model_path, data_dir, rows_spec, out_path);
    if (*sample) return Sample(model_path, data_dir, per_cell, threshold, sample_seed);
    if (*run) return Run(rq, plan_path, mode);
    if (*report) return Report(records_dir, report_out);
  } catch (const rf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
