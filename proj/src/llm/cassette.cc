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

#include "rankfaith/llm/cassette.h"

#include "rankfaith/errors.h"

namespace rankfaith::llm {

nlohmann::json ToJson(const CassetteEntry& e) {
  return {{"fingerprint", e.fingerprint}, {"provider", e.provider}, {"model", e.model},
          {"text", e.text},               {"status", e.status},     {"latency_ms", e.latency_ms},
          {"timestamp", e.timestamp},     {"request", e.request}};
}

CassetteEntry CassetteEntryFromJson(const nlohmann::json& j) {
  CassetteEntry e;
  try {
    e.fingerprint = j.at("fingerprint").get<std::string>();
    e.provider = j.value("provider", "");
    e.model = j.value("model", "");
    e.text = j.at("text").get<std::string>();
    e.status = j.value("status", 200);
    e.latency_ms = j.value("latency_ms", 0.0);
    e.timestamp = j.value("timestamp", "");
    e.request = j.value("request", nlohmann::json());
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("bad cassette entry: ") + ex.what());
  }
  return e;
}

Cassette::Cassette(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& ex) {
      throw FormatError(path_.string() + ":" + std::to_string(line_no) + ": " + ex.what());
    }
    auto entry = CassetteEntryFromJson(j);
    entries_.emplace(entry.fingerprint, std::move(entry));
  }
}

std::optional<CassetteEntry> Cassette::Find(const std::string& fingerprint) const {
  std::lock_guard lock(mu_);
  const auto it = entries_.find(fingerprint);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void Cassette::Append(const CassetteEntry& entry) {
  std::lock_guard lock(mu_);
  if (entries_.count(entry.fingerprint)) return;
  if (!out_.is_open()) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    out_.open(path_, std::ios::app);
    if (!out_) throw IoError("cannot append to " + path_.string());
  }
  out_ << ToJson(entry).dump() << '\n';
  out_.flush();
  entries_.emplace(entry.fingerprint, entry);
}

std::size_t Cassette::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace rankfaith::llm
