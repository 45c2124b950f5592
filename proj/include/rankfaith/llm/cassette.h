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

#ifndef RANKFAITH_LLM_CASSETTE_H_
#define RANKFAITH_LLM_CASSETTE_H_

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "nlohmann/json.hpp"

namespace rankfaith::llm {

struct CassetteEntry {
  std::string fingerprint;
  std::string provider;
  std::string model;
  std::string text;
  int status = 200;
  double latency_ms = 0.0;
  std::string timestamp;
  nlohmann::json request;
};

nlohmann::json ToJson(const CassetteEntry& entry);
CassetteEntry CassetteEntryFromJson(const nlohmann::json& j);

// Line-delimited store of responses keyed by request fingerprint. Appends go
// through one mutex-guarded writer and are flushed line by line. The first
// entry for a fingerprint wins.
class Cassette {
 public:
  // Loads `path` if it exists. A missing file is an empty cassette.
  explicit Cassette(std::filesystem::path path);

  std::optional<CassetteEntry> Find(const std::string& fingerprint) const;
  void Append(const CassetteEntry& entry);
  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::string, CassetteEntry> entries_;
  std::ofstream out_;
};

}  // namespace rankfaith::llm

#endif  // RANKFAITH_LLM_CASSETTE_H_
