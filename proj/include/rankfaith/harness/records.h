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

#ifndef RANKFAITH_HARNESS_RECORDS_H_
#define RANKFAITH_HARNESS_RECORDS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "rankfaith/alignment/alignment.h"
#include "rankfaith/attribution/ranking.h"
#include "rankfaith/llm/retry.h"
#include "rankfaith/prompt/parser.h"

namespace rankfaith::harness {

inline constexpr int kRecordSchemaVersion = 1;

// One LLM call and its scores. Contains no timestamps or latencies, so a
// replayed run reproduces it byte for byte.
struct EvalRecord {
  int rq = 1;
  std::int64_t instance_id = 0;
  std::string cell;
  std::string base_model;
  std::string provider;
  std::string llm_model;
  std::string mode;
  int k_out = 0;
  std::vector<std::int64_t> demo_ids;
  std::string fingerprint;
  std::string prompt;
  std::string reply;
  std::vector<std::string> parsed;
  std::vector<prompt::Violation> violations;
  attribution::RankedExplanation reference;
  alignment::AlignmentScore scores;
  std::vector<llm::Attempt> attempts;
  std::string error;  // empty on success

  std::string llm_id() const { return provider + "/" + llm_model; }
  // "<base model>|<provider>/<model>|<mode>"
  std::string arm() const;
  bool ok() const { return error.empty(); }
};

nlohmann::json ToJson(const EvalRecord& record);
EvalRecord RecordFromJson(const nlohmann::json& j);

// Orders by (instance id, arm).
void SortRecords(std::vector<EvalRecord>& records);

std::string RecordLine(const EvalRecord& record);
void WriteRecords(const std::filesystem::path& path, std::span<const EvalRecord> records);
std::vector<EvalRecord> ReadRecords(const std::filesystem::path& path);

// Scores recomputed from the stored reference and parsed rankings.
alignment::AlignmentScore RecomputeScores(const EvalRecord& record);

}  // namespace rankfaith::harness

#endif  // RANKFAITH_HARNESS_RECORDS_H_
