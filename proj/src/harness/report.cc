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

#include "rankfaith/harness/report.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "rankfaith/alignment/alignment.h"
#include "rankfaith/errors.h"
#include "rankfaith/util/format.h"

namespace rankfaith::harness {

namespace fs = std::filesystem;

namespace {

using ArmKey = std::tuple<std::string, std::string, std::string>;  // base model, llm, mode

struct Arm {
  std::vector<const EvalRecord*> records;
  std::size_t failed = 0;
  std::map<std::string, std::size_t> violations;
};

nlohmann::json Opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

std::string Fmt(const std::optional<double>& v) { return v ? util::Fixed(*v, 2) : "n/a"; }

struct KSummary {
  alignment::Summary all;
  alignment::Summary nonperfect;  // over the values strictly below 1
  bool any = false;
};

KSummary SummarizeAt(const std::vector<std::optional<double>>& values) {
  KSummary s;
  if (values.empty()) return s;
  s.any = true;
  s.all = alignment::Summarize(values);
  std::vector<std::optional<double>> below;
  for (const auto& v : values) {
    if (v && *v < 1.0) below.push_back(v);
  }
  if (!below.empty()) s.nonperfect = alignment::Summarize(below);
  return s;
}

nlohmann::json SummaryJson(const KSummary& s) {
  if (!s.any) return nullptr;
  return {{"n_defined", s.all.n_defined},
          {"n_undefined", s.all.n_undefined},
          {"mean", Opt(s.all.mean)},
          {"min", Opt(s.all.min)},
          {"max", Opt(s.all.max)},
          {"n_nonperfect", s.all.n_nonperfect},
          {"mean_nonperfect", Opt(s.all.mean_of_nonperfect)},
          {"min_nonperfect", Opt(s.nonperfect.min)},
          {"max_nonperfect", Opt(s.nonperfect.max)}};
}

std::vector<std::optional<double>> Values(const Arm& arm, int k, bool tau) {
  std::vector<std::optional<double>> out;
  for (const auto* r : arm.records) {
    if (!r->ok()) continue;
    if (tau) {
      const auto it = r->scores.tau.find(k);
      out.push_back(it == r->scores.tau.end() ? std::nullopt : it->second);
    } else {
      const auto it = r->scores.overlap.find(k);
      out.push_back(it == r->scores.overlap.end() ? std::nullopt : std::optional<double>(it->second));
    }
  }
  return out;
}

std::map<ArmKey, Arm> GroupArms(std::span<const EvalRecord> records, std::set<int>* k_grid) {
  std::map<ArmKey, Arm> arms;
  for (const auto& r : records) {
    auto& arm = arms[{r.base_model, r.llm_id(), r.mode}];
    arm.records.push_back(&r);
    if (!r.ok()) ++arm.failed;
    for (const auto& v : r.violations) ++arm.violations[prompt::ViolationKindName(v.kind)];
    for (int k : r.scores.k_values) k_grid->insert(k);
  }
  return arms;
}

nlohmann::json ArmsJson(const std::map<ArmKey, Arm>& arms, const std::set<int>& grid, bool with_tau) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, arm] : arms) {
    nlohmann::json a = {{"base_model", std::get<0>(key)},
                        {"llm", std::get<1>(key)},
                        {"mode", std::get<2>(key)},
                        {"n_records", arm.records.size()},
                        {"n_failed", arm.failed},
                        {"violations", arm.violations},
                        {"overlap", nlohmann::json::object()}};
    if (with_tau) a["tau"] = nlohmann::json::object();
    for (int k : grid) {
      a["overlap"][std::to_string(k)] = SummaryJson(SummarizeAt(Values(arm, k, false)));
      if (with_tau) a["tau"][std::to_string(k)] = SummaryJson(SummarizeAt(Values(arm, k, true)));
    }
    out.push_back(std::move(a));
  }
  return out;
}

void MetricsTable(const nlohmann::json& metrics, std::ostringstream& md) {
  md << "## Base model performance (test split)\n\n";
  if (metrics.is_null() || !metrics.contains("models")) {
    md << "_No metrics available._\n\n";
    return;
  }
  md << "Threshold " << util::Fixed(metrics.value("threshold", 0.5), 2) << ".\n\n";
  md << "| Model | PR-AUC | Macro-F1 | KS |\n|---|---|---|---|\n";
  for (const auto& [tag, m] : metrics["models"].items()) {
    md << "| " << tag << " | " << util::Fixed(m.at("pr_auc").get<double>(), 4) << " | "
       << util::Fixed(m.at("macro_f1").get<double>(), 4) << " | "
       << util::Fixed(100.0 * m.at("ks").get<double>(), 2) << " |\n";
  }
  md << "\n";
}

void RunSummary(const std::map<ArmKey, Arm>& arms, std::ostringstream& md) {
  md << "| Base model | LLM | Mode | Records | Failed | Violations |\n|---|---|---|---|---|---|\n";
  for (const auto& [key, arm] : arms) {
    std::string v;
    for (const auto& [kind, n] : arm.violations) v += (v.empty() ? "" : ", ") + kind + " " + std::to_string(n);
    md << "| " << std::get<0>(key) << " | " << std::get<1>(key) << " | " << std::get<2>(key) << " | "
       << arm.records.size() << " | " << arm.failed << " | " << (v.empty() ? "none" : v) << " |\n";
  }
  md << "\n";
}

void Rq1Tables(const std::map<ArmKey, Arm>& arms, const std::set<int>& grid, std::ostringstream& md) {
  md << "## Translator mode: runs\n\n";
  RunSummary(arms, md);

  md << "## Translator mode: non-perfect Overlap@K\n\n";
  std::ostringstream rows;
  for (const auto& [key, arm] : arms) {
    for (int k : grid) {
      const auto s = SummarizeAt(Values(arm, k, false));
      if (!s.any || s.all.n_nonperfect == 0) continue;
      rows << "| " << std::get<0>(key) << " | " << std::get<1>(key) << " | " << k << " | "
           << s.all.n_nonperfect << " | " << Fmt(s.nonperfect.mean) << " (" << Fmt(s.nonperfect.min)
           << ", " << Fmt(s.nonperfect.max) << ") |\n";
    }
  }
  if (rows.str().empty()) {
    md << "_Every scored record has Overlap@K = 1 at every K._\n\n";
  } else {
    md << "| Base model | LLM | K | Non-perfect | Mean (min, max) |\n|---|---|---|---|---|\n"
       << rows.str() << "\n";
  }

  md << "## Translator mode: non-perfect Kendall tau, count (mean)\n\n";
  md << "| Base model | LLM |";
  for (int k : grid) md << " K=" << k << " |";
  md << "\n|---|---|";
  for (std::size_t i = 0; i < grid.size(); ++i) md << "---|";
  md << "\n";
  for (const auto& [key, arm] : arms) {
    md << "| " << std::get<0>(key) << " | " << std::get<1>(key) << " |";
    for (int k : grid) {
      const auto s = SummarizeAt(Values(arm, k, true));
      md << " " << s.all.n_nonperfect;
      if (s.all.n_nonperfect > 0) md << " (" << Fmt(s.all.mean_of_nonperfect) << ")";
      if (s.all.n_undefined > 0) md << " [" << s.all.n_undefined << " undefined]";
      md << " |";
    }
    md << "\n";
  }
  md << "\n";
}

void Rq2Tables(const std::map<ArmKey, Arm>& arms, const std::set<int>& grid, std::ostringstream& md) {
  md << "## Autonomous mode: runs\n\n";
  RunSummary(arms, md);
  std::set<std::string> bases;
  for (const auto& [key, arm] : arms) bases.insert(std::get<0>(key));
  for (const auto& base : bases) {
    md << "## Autonomous mode: Overlap@K mean (min, max), " << base << "\n\n";
    md << "| Mode | LLM |";
    for (int k : grid) md << " K=" << k << " |";
    md << "\n|---|---|";
    for (std::size_t i = 0; i < grid.size(); ++i) md << "---|";
    md << "\n";
    for (const auto& [key, arm] : arms) {
      if (std::get<0>(key) != base) continue;
      md << "| " << std::get<2>(key) << " | " << std::get<1>(key) << " |";
      for (int k : grid) {
        const auto s = SummarizeAt(Values(arm, k, false));
        if (!s.any) {
          md << " n/a |";
        } else {
          md << " " << Fmt(s.all.mean) << " (" << Fmt(s.all.min) << ", " << Fmt(s.all.max) << ") |";
        }
      }
      md << "\n";
    }
    md << "\n";
  }
}

std::vector<EvalRecord> ReadIfPresent(const fs::path& path) {
  return fs::exists(path) ? ReadRecords(path) : std::vector<EvalRecord>{};
}

}  // namespace

Report BuildReport(std::span<const EvalRecord> rq1, std::span<const EvalRecord> rq2,
                   const nlohmann::json& metrics) {
  if (rq1.empty() && rq2.empty()) throw InvalidArgument("no records to report");
  Report report;
  std::ostringstream md;
  md << "# Explanation alignment report\n\n";
  report.data["metrics"] = metrics.is_null() ? nlohmann::json() : metrics;
  MetricsTable(metrics, md);

  if (!rq1.empty()) {
    std::set<int> grid;
    const auto arms = GroupArms(rq1, &grid);
    report.data["rq1"] = {{"k_grid", grid}, {"arms", ArmsJson(arms, grid, true)}};
    Rq1Tables(arms, grid, md);
  }
  if (!rq2.empty()) {
    std::set<int> grid;
    const auto arms = GroupArms(rq2, &grid);
    report.data["rq2"] = {{"k_grid", grid}, {"arms", ArmsJson(arms, grid, false)}};
    Rq2Tables(arms, grid, md);
  }
  report.markdown = md.str();
  return report;
}

Report WriteReport(const fs::path& records_dir, const fs::path& out_dir) {
  const auto rq1 = ReadIfPresent(records_dir / "records.rq1.jsonl");
  const auto rq2 = ReadIfPresent(records_dir / "records.rq2.jsonl");
  nlohmann::json metrics;
  if (fs::exists(records_dir / "metrics.json")) {
    std::ifstream in(records_dir / "metrics.json");
    metrics = nlohmann::json::parse(in);
  }
  auto report = BuildReport(rq1, rq2, metrics);
  fs::create_directories(out_dir);
  std::ofstream(out_dir / "report.json", std::ios::binary | std::ios::trunc)
      << report.data.dump(2) << '\n';
  std::ofstream(out_dir / "report.md", std::ios::binary | std::ios::trunc) << report.markdown;
  return report;
}

}  // namespace rankfaith::harness
