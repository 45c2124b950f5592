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

#ifndef RANKFAITH_HARNESS_RUNNER_H_
#define RANKFAITH_HARNESS_RUNNER_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "rankfaith/data/prepared.h"
#include "rankfaith/harness/plan.h"
#include "rankfaith/harness/records.h"
#include "rankfaith/harness/sampling.h"
#include "rankfaith/llm/gateway.h"
#include "rankfaith/models/model.h"
#include "rankfaith/prompt/protocol.h"

namespace rankfaith::harness {

// Data and models a plan points at.
struct RunInputs {
  data::PreparedData data;
  std::map<std::string, models::Model> models;
  std::map<std::string, std::string> model_hashes;
  std::string data_hash;
  std::string schema_hash;
};

RunInputs LoadInputs(const EvalPlan& plan);

// Test-split probabilities and metrics for one base model.
struct ModelView {
  std::vector<std::size_t> test_rows;
  std::vector<std::int64_t> test_ids;
  std::vector<int> test_labels;
  std::vector<double> test_probabilities;
};

ModelView ViewTestSplit(const data::PreparedData& data, const models::Model& model);

// The prompt-facing view of one dataset row.
prompt::InstanceContext BuildContext(const data::PreparedData& data, std::size_t row,
                                     const std::string& model_tag, double probability);

attribution::RankedExplanation ReferenceRanking(const data::PreparedData& data,
                                                const models::Model& model, std::size_t row);

// Machine-readable base model metrics on the test split.
nlohmann::json ModelMetrics(const RunInputs& inputs, double threshold);

struct RunOptions {
  llm::Sleeper sleeper = llm::RealSleeper();
  // Replaces the transport built from a provider entry, keyed by provider.
  std::map<std::string, std::shared_ptr<llm::Transport>> transports;
  // Called after each new record is persisted; an exception thrown here stops
  // the run after in-flight work finishes and is rethrown.
  std::function<void(const EvalRecord&)> on_record;
};

struct RunResult {
  std::vector<EvalRecord> records;
  nlohmann::json manifest;
  std::filesystem::path records_path;
};

// Runs RQ1 (translator) or RQ2 (zero/few-shot) over the stratified sample.
// New records are appended to <out_dir>/records.rq<N>.partial.jsonl as they
// complete; records already there with no error are reused, so an interrupted
// run resumes where it stopped. On completion the sorted record set is
// written to records.rq<N>.jsonl, alongside metrics.json and
// manifest.rq<N>.json, and the partial file is removed.
RunResult RunExperiment(const EvalPlan& plan, int rq, llm::TransportMode mode,
                        const RunOptions& options = {});

}  // namespace rankfaith::harness

#endif  // RANKFAITH_HARNESS_RUNNER_H_
