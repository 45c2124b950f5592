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

#ifndef RANKFAITH_HARNESS_PLAN_H_
#define RANKFAITH_HARNESS_PLAN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "rankfaith/llm/retry.h"
#include "rankfaith/llm/transport.h"
#include "rankfaith/prompt/template.h"

namespace rankfaith::harness {

struct LlmTarget {
  std::string provider;
  std::string model;

  std::string id() const { return provider + "/" + model; }
};

// One experiment configuration. Relative paths in the file are resolved
// against the file's directory.
struct EvalPlan {
  std::filesystem::path data_dir;
  std::map<std::string, std::filesystem::path> models;  // tag -> model file
  std::vector<llm::ProviderConfig> providers;
  std::vector<LlmTarget> llms;

  std::vector<int> rq1_k_grid{5, 10, 15, 20};
  int rq1_k_out = 20;  // capped at the feature count
  std::vector<prompt::Mode> rq2_modes{prompt::Mode::kZeroShot, prompt::Mode::kFewShot};
  std::vector<int> rq2_k_grid{3, 5, 10};
  int rq2_k_out = 10;

  std::size_t per_cell = 50;
  double threshold = 0.5;
  std::uint64_t seed = 0;

  std::filesystem::path cassette;
  std::filesystem::path out_dir;
  llm::RetryPolicy retry;
  double temperature = 0.0;
  int max_tokens = 1024;
  int workers = 4;

  // SHA-256 of the plan file bytes, empty when built in memory.
  std::string hash;

  // Throws PlanError on an empty grid, an unknown provider, RQ2 K_out other
  // than 10, or a K above its K_out.
  void Validate() const;
};

EvalPlan PlanFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
EvalPlan LoadPlan(const std::filesystem::path& path);

}  // namespace rankfaith::harness

#endif  // RANKFAITH_HARNESS_PLAN_H_
