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

#include "rankfaith/harness/records.h"

#include <algorithm>
#include <fstream>

#include "rankfaith/errors.h"

namespace rankfaith::harness {

std::string EvalRecord::arm() const { return base_model + "|" + llm_id() + "|" + mode; }

namespace {

nlohmann::json ScoresToJson(const alignment::AlignmentScore& s) {
  nlohmann::json overlap = nlohmann::json::object(), tau = nlohmann::json::object();
  for (const auto& [k, v] : s.overlap) overlap[std::to_string(k)] = v;
  for (const auto& [k, v] : s.tau) tau[std::to_string(k)] = v ? nlohmann::json(*v) : nlohmann::json();
  return {{"k_values", s.k_values}, {"overlap", overlap}, {"tau", tau}};
}

alignment::AlignmentScore ScoresFromJson(const nlohmann::json& j) {
  alignment::AlignmentScore s;
  s.k_values = j.at("k_values").get<std::vector<int>>();
  for (const auto& [k, v] : j.at("overlap").items()) s.overlap[std::stoi(k)] = v.get<double>();
  for (const auto& [k, v] : j.at("tau").items()) {
    s.tau[std::stoi(k)] = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
  }
  return s;
}

}  // namespace

nlohmann::json ToJson(const EvalRecord& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"kind", prompt::ViolationKindName(v.kind)}, {"line", v.line}, {"text", v.text}});
  }
  nlohmann::json reference = nlohmann::json::array();
  for (const auto& f : r.reference) reference.push_back({{"name", f.name}, {"value", f.value}});
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto& a : r.attempts) {
    attempts.push_back(
        {{"attempt", a.number}, {"status", a.status}, {"error", a.error}, {"delay_ms", a.delay_ms}});
  }
  return {{"schema_version", kRecordSchemaVersion},
          {"rq", r.rq},
          {"instance_id", r.instance_id},
          {"cell", r.cell},
          {"base_model", r.base_model},
          {"provider", r.provider},
          {"llm_model", r.llm_model},
          {"mode", r.mode},
          {"k_out", r.k_out},
          {"demo_ids", r.demo_ids},
          {"fingerprint", r.fingerprint},
          {"prompt", r.prompt},
          {"reply", r.reply},
          {"parsed", r.parsed},
          {"violations", violations},
          {"reference", reference},
          {"scores", ScoresToJson(r.scores)},
          {"attempts", attempts},
          {"error", r.error.empty() ? nlohmann::json() : nlohmann::json(r.error)}};
}

EvalRecord RecordFromJson(const nlohmann::json& j) {
  EvalRecord r;
  try {
    if (j.at("schema_version").get<int>() != kRecordSchemaVersion) {
      throw FormatError("unsupported record schema_version");
    }
    r.rq = j.at("rq").get<int>();
    r.instance_id = j.at("instance_id").get<std::int64_t>();
    r.cell = j.at("cell").get<std::string>();
    r.base_model = j.at("base_model").get<std::string>();
    r.provider = j.at("provider").get<std::string>();
    r.llm_model = j.at("llm_model").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.k_out = j.at("k_out").get<int>();
    r.demo_ids = j.at("demo_ids").get<std::vector<std::int64_t>>();
    r.fingerprint = j.at("fingerprint").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.reply = j.at("reply").get<std::string>();
    r.parsed = j.at("parsed").get<std::vector<std::string>>();
    for (const auto& v : j.at("violations")) {
      r.violations.push_back({prompt::ViolationKindFromName(v.at("kind").get<std::string>()),
                              v.at("line").get<int>(), v.at("text").get<std::string>()});
    }
    for (const auto& f : j.at("reference")) {
      r.reference.push_back({f.at("name").get<std::string>(), f.at("value").get<double>()});
    }
    r.scores = ScoresFromJson(j.at("scores"));
    for (const auto& a : j.at("attempts")) {
      r.attempts.push_back({a.at("attempt").get<int>(), a.at("status").get<int>(),
                            a.at("error").get<std::string>(), a.at("delay_ms").get<std::int64_t>()});
    }
    if (!j.at("error").is_null()) r.error = j["error"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad record: ") + e.what());
  }
  return r;
}

void SortRecords(std::vector<EvalRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const EvalRecord& a, const EvalRecord& b) {
    if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
    return a.arm() < b.arm();
  });
}

std::string RecordLine(const EvalRecord& record) { return ToJson(record).dump() + "\n"; }

void WriteRecords(const std::filesystem::path& path, std::span<const EvalRecord> records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    for (const auto& r : records) out << RecordLine(r);
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<EvalRecord> ReadRecords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<EvalRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(RecordFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      // A crash can leave a torn final line in a partial file.
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

alignment::AlignmentScore RecomputeScores(const EvalRecord& record) {
  const auto reference = attribution::TopNames(record.reference, record.reference.size());
  return alignment::Score(reference, record.parsed, record.scores.k_values);
}

}  // namespace rankfaith::harness
