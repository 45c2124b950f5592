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

#ifndef RANKFAITH_HARNESS_REPORT_H_
#define RANKFAITH_HARNESS_REPORT_H_

#include <filesystem>
#include <span>
#include <string>

#include "nlohmann/json.hpp"
#include "rankfaith/harness/records.h"

namespace rankfaith::harness {

struct Report {
  nlohmann::json data;
  std::string markdown;
};

// Pure function of its inputs. `metrics` is the content of metrics.json (may
// be null). Throws InvalidArgument when there are no records at all.
Report BuildReport(std::span<const EvalRecord> rq1, std::span<const EvalRecord> rq2,
                   const nlohmann::json& metrics);

// Reads records.rq1.jsonl, records.rq2.jsonl and metrics.json from
// `records_dir` (each optional) and writes report.json and report.md to
// `out_dir`.
Report WriteReport(const std::filesystem::path& records_dir, const std::filesystem::path& out_dir);

}  // namespace rankfaith::harness

#endif  // RANKFAITH_HARNESS_REPORT_H_
