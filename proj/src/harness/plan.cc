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

#include "rankfaith/harness/plan.h"

#include <fstream>
#include <set>
#include <sstream>

#include "rankfaith/errors.h"
#include "rankfaith/util/hash.h"

namespace rankfaith::harness {

namespace {

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void CheckGrid(const std::vector<int>& grid, int k_out, const std::string& what) {
  if (grid.empty()) throw PlanError(what + " K grid is empty");
  for (int k : grid) {
    if (k < 1 || k > k_out) {
      throw PlanError(what + " K=" + std::to_string(k) + " outside [1, " + std::to_string(k_out) +
                      "]");
    }
  }
}

}  // namespace

void EvalPlan::Validate() const {
  if (models.empty()) throw PlanError("no base models");
  if (llms.empty()) throw PlanError("no LLM targets");
  std::set<std::string> names;
  for (const auto& p : providers) {
    if (!names.insert(p.name).second) throw PlanError("duplicate provider " + p.name);
  }
  std::set<std::string> llm_ids;
  for (const auto& l : llms) {
    if (!names.count(l.provider)) throw PlanError("LLM " + l.id() + " names an unknown provider");
    if (!llm_ids.insert(l.id()).second) throw PlanError("duplicate LLM " + l.id());
  }
  if (rq2_modes.empty()) throw PlanError("no RQ2 modes");
  for (auto m : rq2_modes) {
    if (m == prompt::Mode::kTranslator) throw PlanError("translator is not an RQ2 mode");
  }
  if (rq2_k_out != 10) throw PlanError("RQ2 K_out must be 10");
  if (rq1_k_out < 1) throw PlanError("RQ1 K_out must be positive");
  CheckGrid(rq1_k_grid, rq1_k_out, "RQ1");
  CheckGrid(rq2_k_grid, rq2_k_out, "RQ2");
  if (per_cell < 1) throw PlanError("per_cell must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) throw PlanError("threshold must lie in (0, 1)");
  if (retry.max_attempts < 1) throw PlanError("retry.max_attempts must be >= 1");
  if (workers < 1) throw PlanError("workers must be >= 1");
  if (out_dir.empty()) throw PlanError("out_dir is required");
}

EvalPlan PlanFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  EvalPlan plan;
  try {
    if (j.value("format_version", 1) != 1) throw PlanError("unsupported plan format_version");
    plan.data_dir = Resolve(base_dir, j.at("data_dir").get<std::string>());
    for (const auto& [tag, path] : j.at("models").items()) {
      plan.models[tag] = Resolve(base_dir, path.get<std::string>());
    }
    for (const auto& p : j.value("providers", nlohmann::json::array())) {
      plan.providers.push_back(llm::ProviderFromJson(p));
    }
    for (const auto& l : j.at("llms")) {
      plan.llms.push_back({l.at("provider").get<std::string>(), l.at("model").get<std::string>()});
    }
    if (j.contains("rq1")) {
      const auto& r = j["rq1"];
      plan.rq1_k_grid = r.value("k_grid", plan.rq1_k_grid);
      plan.rq1_k_out = r.value("k_out", plan.rq1_k_out);
    }
    if (j.contains("rq2")) {
      const auto& r = j["rq2"];
      if (r.contains("modes")) {
        plan.rq2_modes.clear();
        for (const auto& m : r["modes"]) plan.rq2_modes.push_back(prompt::ModeFromName(m.get<std::string>()));
      }
      plan.rq2_k_grid = r.value("k_grid", plan.rq2_k_grid);
      plan.rq2_k_out = r.value("k_out", plan.rq2_k_out);
    }
    if (j.contains("sample")) {
      plan.per_cell = j["sample"].value("per_cell", plan.per_cell);
      plan.threshold = j["sample"].value("threshold", plan.threshold);
    }
    plan.seed = j.value("seed", plan.seed);
    if (j.contains("cassette")) plan.cassette = Resolve(base_dir, j["cassette"].get<std::string>());
    plan.out_dir = Resolve(base_dir, j.at("out_dir").get<std::string>());
    if (j.contains("retry")) {
      const auto& r = j["retry"];
      plan.retry.max_attempts = r.value("max_attempts", plan.retry.max_attempts);
      plan.retry.base_delay_ms = r.value("base_delay_ms", plan.retry.base_delay_ms);
      plan.retry.max_delay_ms = r.value("max_delay_ms", plan.retry.max_delay_ms);
      plan.retry.jitter_seed = r.value("jitter_seed", plan.retry.jitter_seed);
    }
    plan.temperature = j.value("temperature", plan.temperature);
    plan.max_tokens = j.value("max_tokens", plan.max_tokens);
    plan.workers = j.value("workers", plan.workers);
  } catch (const nlohmann::json::exception& e) {
    throw PlanError(std::string("bad plan: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw PlanError(e.what());
  }
  plan.Validate();
  return plan;
}

EvalPlan LoadPlan(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read plan " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw PlanError(path.string() + ": " + e.what());
  }
  auto plan = PlanFromJson(j, std::filesystem::absolute(path).parent_path());
  plan.hash = util::Sha256Hex(buf.str());
  return plan;
}

}  // namespace rankfaith::harness
