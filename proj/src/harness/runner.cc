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

#include "rankfaith/harness/runner.h"

#include <atomic>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "rankfaith/alignment/alignment.h"
#include "rankfaith/attribution/attribution.h"
#include "rankfaith/attribution/ranking.h"
#include "rankfaith/errors.h"
#include "rankfaith/llm/bots.h"
#include "rankfaith/models/metrics.h"
#include "rankfaith/prompt/parser.h"
#include "rankfaith/util/hash.h"
#include "rankfaith/version.h"

namespace rankfaith::harness {

namespace fs = std::filesystem;

RunInputs LoadInputs(const EvalPlan& plan) {
  RunInputs in;
  in.data = data::LoadPrepared(plan.data_dir);
  in.data_hash = data::HashPrepared(plan.data_dir);
  in.schema_hash = util::Sha256File(plan.data_dir / "schema.json");
  for (const auto& [tag, path] : plan.models) {
    auto model = models::LoadModel(path);
    if (models::NumFeatures(model) != in.data.dataset.matrix.cols()) {
      throw DimensionMismatch("model " + tag + " expects " +
                              std::to_string(models::NumFeatures(model)) + " columns, data has " +
                              std::to_string(in.data.dataset.matrix.cols()));
    }
    in.models.emplace(tag, std::move(model));
    in.model_hashes[tag] = util::Sha256File(path);
  }
  return in;
}

ModelView ViewTestSplit(const data::PreparedData& data, const models::Model& model) {
  ModelView v;
  v.test_rows = data.split.test;
  for (auto row : v.test_rows) {
    v.test_ids.push_back(data.dataset.instance_ids[row]);
    v.test_labels.push_back(data.dataset.labels[row]);
  }
  v.test_probabilities = models::PredictProbabilities(model, data.dataset.matrix, v.test_rows);
  return v;
}

prompt::InstanceContext BuildContext(const data::PreparedData& data, std::size_t row,
                                     const std::string& model_tag, double probability) {
  const auto& ds = data.dataset;
  prompt::InstanceContext ctx;
  ctx.instance_id = ds.instance_ids[row];
  ctx.model_tag = model_tag;
  const auto names = ds.original_names();
  for (std::size_t f = 0; f < names.size(); ++f) ctx.features.emplace_back(names[f], ds.display[row][f]);
  ctx.observed = ds.labels[row];
  ctx.observed_label = ctx.observed == 1 ? data.schema.target.positive : data.schema.target.negative;
  ctx.probability = probability;
  return ctx;
}

attribution::RankedExplanation ReferenceRanking(const data::PreparedData& data,
                                                const models::Model& model, std::size_t row) {
  const auto attr = attribution::Attribute(model, data.dataset.matrix.row(row));
  return attribution::RankFeatures(attribution::GroupAttributions(attr, data.dataset.groups));
}

nlohmann::json ModelMetrics(const RunInputs& inputs, double threshold) {
  nlohmann::json out = {{"threshold", threshold}, {"models", nlohmann::json::object()}};
  for (const auto& [tag, model] : inputs.models) {
    const auto view = ViewTestSplit(inputs.data, model);
    const auto m = models::Evaluate(view.test_probabilities, view.test_labels, threshold);
    std::size_t positives = 0;
    for (int y : view.test_labels) positives += static_cast<std::size_t>(y);
    out["models"][tag] = {{"kind", models::ModelKindName(model)},
                          {"pr_auc", m.pr_auc},
                          {"macro_f1", m.macro_f1},
                          {"ks", m.ks},
                          {"n_test", view.test_labels.size()},
                          {"n_positive", positives}};
  }
  return out;
}

namespace {

struct WorkItem {
  EvalRecord skeleton;
  llm::ChatRequest request;
  std::vector<std::string> reference_names;
  std::vector<std::string> vocabulary;
  std::vector<int> k_grid;
};

struct SampledInstance {
  std::size_t row = 0;
  std::string cell;
  prompt::InstanceContext context;
  attribution::RankedExplanation reference;
};

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<SampledInstance> SampleInstances(const data::PreparedData& data,
                                             const models::Model& model, const std::string& tag,
                                             const EvalPlan& plan, nlohmann::json* manifest) {
  const auto view = ViewTestSplit(data, model);
  const auto sample = StratifiedSample(view.test_ids, view.test_labels, view.test_probabilities,
                                       plan.threshold, plan.per_cell, plan.seed);
  (*manifest)["samples"][tag] = {{"cell_counts", sample.cell_counts}, {"ids", sample.by_cell}};

  std::vector<std::size_t> rows;
  for (auto id : sample.ids) rows.push_back(data.dataset.RowOf(id));
  const auto attributions = attribution::AttributeBatch(model, data.dataset.matrix, rows);
  const auto probabilities = models::PredictProbabilities(model, data.dataset.matrix, rows);

  std::vector<SampledInstance> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SampledInstance s;
    s.row = rows[i];
    s.cell = sample.cell_of.at(sample.ids[i]);
    s.context = BuildContext(data, rows[i], tag, probabilities[i]);
    s.reference = attribution::RankFeatures(
        attribution::GroupAttributions(attributions[i], data.dataset.groups));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<prompt::Demonstration> Demonstrations(const data::PreparedData& data,
                                                  const models::Model& model,
                                                  const std::string& tag, double threshold) {
  const auto& train = data.split.train;
  const auto probabilities = models::PredictProbabilities(model, data.dataset.matrix, train);
  std::vector<prompt::DemoCandidate> pool;
  for (std::size_t i = 0; i < train.size(); ++i) {
    pool.push_back({data.dataset.instance_ids[train[i]], data.dataset.labels[train[i]], probabilities[i]});
  }
  std::vector<prompt::Demonstration> demos;
  for (auto id : prompt::SelectDemonstrations(pool, threshold)) {
    const auto row = data.dataset.RowOf(id);
    const double p = models::Predict(model, data.dataset.matrix.row(row)).probability;
    demos.push_back({BuildContext(data, row, tag, p), ReferenceRanking(data, model, row)});
  }
  return demos;
}

std::vector<WorkItem> BuildWork(const EvalPlan& plan, const RunInputs& inputs, int rq,
                                llm::ReferenceTable* references, nlohmann::json* manifest) {
  const auto& data = inputs.data;
  const int m = static_cast<int>(data.dataset.groups.size());
  std::vector<WorkItem> items;
  for (const auto& [tag, model] : inputs.models) {
    const auto instances = SampleInstances(data, model, tag, plan, manifest);
    for (const auto& s : instances) {
      (*references)[{tag, s.context.instance_id}] = attribution::TopNames(s.reference, s.reference.size());
    }

    std::vector<prompt::Mode> modes;
    int k_out = 0;
    std::vector<int> grid;
    if (rq == 1) {
      modes = {prompt::Mode::kTranslator};
      k_out = std::min(plan.rq1_k_out, m);
      grid = plan.rq1_k_grid;
    } else {
      modes = plan.rq2_modes;
      k_out = plan.rq2_k_out;
      grid = plan.rq2_k_grid;
    }
    for (int k : grid) {
      if (k > k_out) throw PlanError("K=" + std::to_string(k) + " exceeds K_out=" + std::to_string(k_out));
    }
    std::vector<prompt::Demonstration> demos;
    std::vector<std::int64_t> demo_ids;
    if (std::find(modes.begin(), modes.end(), prompt::Mode::kFewShot) != modes.end()) {
      demos = Demonstrations(data, model, tag, plan.threshold);
      for (const auto& d : demos) demo_ids.push_back(d.context.instance_id);
      (*manifest)["demo_ids"][tag] = demo_ids;
    }

    for (const auto& target : plan.llms) {
      for (auto mode : modes) {
        for (const auto& s : instances) {
          prompt::PromptSpec spec;
          switch (mode) {
            case prompt::Mode::kTranslator:
              spec = prompt::BuildTranslatorPrompt(s.context, s.reference, k_out);
              break;
            case prompt::Mode::kZeroShot:
              spec = prompt::BuildZeroShotPrompt(s.context, k_out);
              break;
            case prompt::Mode::kFewShot:
              spec = prompt::BuildFewShotPrompt(s.context, demos, k_out);
              break;
          }
          WorkItem item;
          item.request.provider = target.provider;
          item.request.model = target.model;
          item.request.messages = {{"user", spec.rendered_text}};
          item.request.temperature = plan.temperature;
          item.request.max_tokens = plan.max_tokens;
          auto& r = item.skeleton;
          r.rq = rq;
          r.instance_id = s.context.instance_id;
          r.cell = s.cell;
          r.base_model = tag;
          r.provider = target.provider;
          r.llm_model = target.model;
          r.mode = prompt::ModeName(mode);
          r.k_out = k_out;
          if (mode == prompt::Mode::kFewShot) r.demo_ids = demo_ids;
          r.fingerprint = item.request.Fingerprint();
          r.prompt = spec.rendered_text;
          r.reference = s.reference;
          item.reference_names = attribution::TopNames(s.reference, s.reference.size());
          item.vocabulary = spec.vocabulary;
          item.k_grid = grid;
          items.push_back(std::move(item));
        }
      }
    }
  }
  std::set<std::string> seen;
  for (const auto& item : items) {
    if (!seen.insert(item.skeleton.fingerprint).second) {
      throw PlanError("two arms issue an identical request for instance " +
                      std::to_string(item.skeleton.instance_id));
    }
  }
  return items;
}

EvalRecord Execute(const WorkItem& item, llm::Gateway& gateway) {
  EvalRecord r = item.skeleton;
  try {
    auto completion = gateway.Complete(item.request, &r.attempts);
    r.attempts = std::move(completion.attempts);
    r.reply = std::move(completion.response.text);
  } catch (const std::exception& e) {
    r.error = e.what();
    return r;
  }
  try {
    auto parsed = prompt::ParseRanking(r.reply, item.vocabulary, r.k_out);
    r.parsed = std::move(parsed.names);
    r.violations = std::move(parsed.violations);
    r.scores = alignment::Score(item.reference_names, r.parsed, item.k_grid);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

RunResult RunExperiment(const EvalPlan& plan, int rq, llm::TransportMode mode,
                        const RunOptions& options) {
  if (rq != 1 && rq != 2) throw InvalidArgument("rq must be 1 or 2");
  plan.Validate();
  const std::string started = UtcNow();
  const RunInputs inputs = LoadInputs(plan);

  nlohmann::json manifest = {{"software_version", std::string(kVersion)},
                             {"template_version", std::string(prompt::kTemplateVersion)},
                             {"rq", rq},
                             {"transport_mode", llm::TransportModeName(mode)},
                             {"plan_hash", plan.hash},
                             {"data_hash", inputs.data_hash},
                             {"schema_hash", inputs.schema_hash},
                             {"model_hashes", inputs.model_hashes},
                             {"seed", plan.seed},
                             {"split_seed", inputs.data.split.seed},
                             {"threshold", plan.threshold},
                             {"per_cell", plan.per_cell},
                             {"samples", nlohmann::json::object()},
                             {"demo_ids", nlohmann::json::object()}};

  auto references = std::make_shared<llm::ReferenceTable>();
  const auto items = BuildWork(plan, inputs, rq, references.get(), &manifest);

  std::map<std::string, llm::GatewayProvider> providers;
  for (const auto& p : plan.providers) {
    const auto it = options.transports.find(p.name);
    auto transport = it != options.transports.end() ? it->second : llm::MakeTransport(p, references);
    providers[p.name] = {std::move(transport), p.max_in_flight};
  }
  const fs::path cassette_path = plan.cassette.empty() ? plan.out_dir / "cassette.jsonl" : plan.cassette;
  std::shared_ptr<llm::Cassette> cassette;
  if (mode != llm::TransportMode::kLive) cassette = std::make_shared<llm::Cassette>(cassette_path);
  llm::Gateway gateway(mode, cassette, std::move(providers), plan.retry, options.sleeper);

  fs::create_directories(plan.out_dir);
  const std::string stem = "records.rq" + std::to_string(rq);
  const fs::path partial_path = plan.out_dir / (stem + ".partial.jsonl");
  const fs::path final_path = plan.out_dir / (stem + ".jsonl");

  std::set<std::string> done;
  if (fs::exists(partial_path)) {
    for (const auto& r : ReadRecords(partial_path)) {
      if (r.ok()) done.insert(r.fingerprint);
    }
  }
  std::vector<const WorkItem*> pending;
  for (const auto& item : items) {
    if (!done.count(item.skeleton.fingerprint)) pending.push_back(&item);
  }

  std::mutex write_mu;
  std::ofstream partial(partial_path, std::ios::binary | std::ios::app);
  if (!partial) throw IoError("cannot append to " + partial_path.string());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  auto worker = [&] {
    while (!stop) {
      const std::size_t i = next++;
      if (i >= pending.size()) return;
      EvalRecord record = Execute(*pending[i], gateway);
      std::lock_guard lock(write_mu);
      if (stop) return;
      partial << RecordLine(record);
      partial.flush();
      if (options.on_record) {
        try {
          options.on_record(record);
        } catch (...) {
          failure = std::current_exception();
          stop = true;
        }
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(plan.workers), std::max<std::size_t>(pending.size(), 1));
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  partial.close();
  if (failure) std::rethrow_exception(failure);

  // Last line per fingerprint wins, so a retried failure replaces the old one.
  std::map<std::string, EvalRecord> latest;
  for (auto& r : ReadRecords(partial_path)) latest[r.fingerprint] = std::move(r);
  RunResult result;
  for (const auto& item : items) {
    const auto it = latest.find(item.skeleton.fingerprint);
    if (it == latest.end()) throw IoError("record missing after run: " + item.skeleton.arm());
    result.records.push_back(it->second);
  }
  SortRecords(result.records);
  WriteRecords(final_path, result.records);
  fs::remove(partial_path);

  const auto metrics = ModelMetrics(inputs, plan.threshold);
  {
    std::ofstream out(plan.out_dir / "metrics.json", std::ios::binary | std::ios::trunc);
    out << metrics.dump(2) << '\n';
  }

  std::size_t failed = 0;
  for (const auto& r : result.records) failed += r.ok() ? 0 : 1;
  manifest["cassette"] = cassette ? cassette_path.string() : "";
  manifest["cassette_hash"] = cassette && fs::exists(cassette_path) ? util::Sha256File(cassette_path) : "";
  manifest["records_hash"] = util::Sha256File(final_path);
  manifest["n_records"] = result.records.size();
  manifest["n_failed"] = failed;
  manifest["n_resumed"] = items.size() - pending.size();
  manifest["started_at"] = started;
  manifest["finished_at"] = UtcNow();
  {
    std::ofstream out(plan.out_dir / ("manifest.rq" + std::to_string(rq) + ".json"),
                      std::ios::binary | std::ios::trunc);
    out << manifest.dump(2) << '\n';
  }
  result.manifest = std::move(manifest);
  result.records_path = final_path;
  return result;
}

}  // namespace rankfaith::harness
