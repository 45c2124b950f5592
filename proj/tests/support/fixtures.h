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

#ifndef RANKFAITH_TESTS_SUPPORT_FIXTURES_H_
#define RANKFAITH_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "rankfaith/data/prepared.h"
#include "rankfaith/harness/plan.h"
#include "rankfaith/llm/transport.h"
#include "rankfaith/models/model.h"

namespace rankfaith::testing {

std::filesystem::path SourceDir();

// A fresh directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& text);

// Synthetic corpus of `rows` rows prepared with a 70/30 split.
data::PreparedData SyntheticPrepared(std::size_t rows, std::uint64_t seed);

// Quickly trained base models on the training split.
models::Model QuickLogistic(const data::PreparedData& data);
models::Model QuickGbdt(const data::PreparedData& data, int rounds = 60, int depth = 3);

// The bundled synthetic corpus under data/synthetic, 70/30 split, seed 42.
data::PreparedData BundledPrepared();

struct Workspace {
  std::filesystem::path data_dir;
  std::map<std::string, std::filesystem::path> models;
};

// Persists `data` to dir/data and each model to dir/<tag>.json.
Workspace SaveWorkspace(const std::filesystem::path& dir, const data::PreparedData& data,
                        const std::map<std::string, models::Model>& models);

llm::ProviderConfig BotProvider(const std::string& name, const std::string& kind,
                                nlohmann::json options = nlohmann::json::object());

// A plan over `ws` with one LLM target ("<provider>", "bot") per provider.
harness::EvalPlan BotPlan(const Workspace& ws, const std::filesystem::path& out_dir,
                          const std::vector<llm::ProviderConfig>& providers,
                          std::size_t per_cell = 50);

}  // namespace rankfaith::testing

#endif  // RANKFAITH_TESTS_SUPPORT_FIXTURES_H_
