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

#include "fixtures.h"

#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "rankfaith/data/schema.h"
#include "rankfaith/data/synthetic.h"
#include "rankfaith/data/table.h"
#include "rankfaith/models/gbdt.h"
#include "rankfaith/models/logistic.h"

namespace rankfaith::testing {

std::filesystem::path SourceDir() { return RANKFAITH_SOURCE_DIR; }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("rankfaith_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
}

data::PreparedData SyntheticPrepared(std::size_t rows, std::uint64_t seed) {
  const auto raw = data::ParseCsv(data::GenerateSyntheticLoans(rows, seed));
  return data::PrepareData(raw, data::SyntheticLoanSchema(), 0.7, seed);
}

models::Model QuickLogistic(const data::PreparedData& data) {
  auto model = models::FitLogistic(data.dataset.matrix, data.dataset.labels, data.split.train, 0.1);
  model.feature_names = data.dataset.encoded_names;
  return model;
}

models::Model QuickGbdt(const data::PreparedData& data, int rounds, int depth) {
  models::GbdtParams params;
  params.n_rounds = rounds;
  params.max_depth = depth;
  const auto x = data.dataset.matrix.Rows(data.split.train);
  std::vector<int> y;
  for (auto r : data.split.train) y.push_back(data.dataset.labels[r]);
  auto model = models::FitGbdt(x, y, params).model;
  model.feature_names = data.dataset.encoded_names;
  return model;
}

data::PreparedData BundledPrepared() {
  const auto dir = SourceDir() / "data" / "synthetic";
  const auto raw = data::LoadTable(dir / "loans.csv");
  return data::PrepareData(raw, data::LoadSchema(dir / "schema.json"), 0.7, 42);
}

Workspace SaveWorkspace(const std::filesystem::path& dir, const data::PreparedData& data,
                        const std::map<std::string, models::Model>& models) {
  Workspace ws;
  ws.data_dir = dir / "data";
  data::SavePrepared(data, ws.data_dir);
  for (const auto& [tag, model] : models) {
    ws.models[tag] = dir / (tag + ".json");
    models::SaveModel(model, ws.models[tag]);
  }
  return ws;
}

llm::ProviderConfig BotProvider(const std::string& name, const std::string& kind,
                                nlohmann::json options) {
  llm::ProviderConfig p;
  p.name = name;
  p.kind = kind;
  p.options = std::move(options);
  return p;
}

harness::EvalPlan BotPlan(const Workspace& ws, const std::filesystem::path& out_dir,
                          const std::vector<llm::ProviderConfig>& providers,
                          std::size_t per_cell) {
  harness::EvalPlan plan;
  plan.data_dir = ws.data_dir;
  plan.models = ws.models;
  plan.providers = providers;
  for (const auto& p : providers) plan.llms.push_back({p.name, "bot"});
  plan.per_cell = per_cell;
  plan.seed = 7;
  plan.out_dir = out_dir;
  plan.retry.base_delay_ms = 1;
  return plan;
}

}  // namespace rankfaith::testing
