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

#include "rankfaith/prompt/parser.h"

#include <algorithm>
#include <optional>
#include <regex>
#include <unordered_set>

#include "rankfaith/errors.h"
#include "rankfaith/util/format.h"

namespace rankfaith::prompt {

std::string ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnknownFeature:
      return "unknown_feature";
    case ViolationKind::kDuplicate:
      return "duplicate";
    case ViolationKind::kMalformedLine:
      return "malformed_line";
    case ViolationKind::kTruncated:
      return "truncated";
  }
  return "unknown";
}

ViolationKind ViolationKindFromName(std::string_view name) {
  if (name == "unknown_feature") return ViolationKind::kUnknownFeature;
  if (name == "duplicate") return ViolationKind::kDuplicate;
  if (name == "malformed_line") return ViolationKind::kMalformedLine;
  if (name == "truncated") return ViolationKind::kTruncated;
  throw InvalidArgument("unknown violation kind '" + std::string(name) + "'");
}

namespace {

// "<rank>. <name>" or "<rank>) <name>", optionally wrapped in markdown bold.
const std::regex& NumberedLine() {
  static const std::regex re(R"(^\s*(?:\*\*)?(\d+)(?:\*\*)?\s*[.)](?:\*\*)?\s+(.*\S)\s*$)");
  return re;
}

std::string StripDecoration(std::string s) {
  s = util::Trim(s);
  const std::string marks = "*`\"'_";
  while (!s.empty() && marks.find(s.front()) != std::string::npos) s.erase(s.begin());
  while (!s.empty() && marks.find(s.back()) != std::string::npos) s.pop_back();
  return util::Trim(s);
}

// The vocabulary entry a list item names: the whole item, or the item with a
// trailing "(...)", ": ..." or " - ..." annotation removed.
std::optional<std::string> Resolve(const std::string& item,
                                   const std::unordered_set<std::string>& vocabulary) {
  std::vector<std::string> candidates{StripDecoration(item)};
  if (const auto p = item.rfind(" ("); p != std::string::npos) {
    candidates.push_back(StripDecoration(item.substr(0, p)));
  }
  if (const auto p = item.find(':'); p != std::string::npos) {
    candidates.push_back(StripDecoration(item.substr(0, p)));
  }
  if (const auto p = item.find(" - "); p != std::string::npos) {
    candidates.push_back(StripDecoration(item.substr(0, p)));
  }
  for (const auto& c : candidates) {
    if (vocabulary.count(c)) return c;
  }
  return std::nullopt;
}

}  // namespace

ParsedRanking ParseRanking(std::string_view reply, std::span<const std::string> vocabulary,
                           int k_out) {
  if (k_out < 1) throw InvalidArgument("K_out must be at least 1");
  std::vector<std::string> lines;
  for (auto& line : util::Split(reply, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }

  std::vector<std::optional<std::string>> items(lines.size());
  std::optional<std::size_t> first, last;
  std::smatch m;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (std::regex_match(lines[i], m, NumberedLine())) {
      items[i] = m[2].str();
      if (!first) first = i;
      last = i;
    }
  }

  ParsedRanking parsed;
  if (!first) throw UnparseableReply("no numbered lines in reply");
  const std::unordered_set<std::string> vocab(vocabulary.begin(), vocabulary.end());
  std::unordered_set<std::string> seen;
  for (std::size_t i = *first; i <= *last; ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (!items[i]) {
      if (!util::Trim(lines[i]).empty()) {
        parsed.violations.push_back({ViolationKind::kMalformedLine, line_no, lines[i]});
      }
      continue;
    }
    const auto name = Resolve(*items[i], vocab);
    if (!name) {
      parsed.violations.push_back({ViolationKind::kUnknownFeature, line_no, *items[i]});
    } else if (!seen.insert(*name).second) {
      parsed.violations.push_back({ViolationKind::kDuplicate, line_no, *name});
    } else {
      parsed.names.push_back(*name);
    }
  }
  if (parsed.names.empty()) throw UnparseableReply("no line names a known feature");
  if (parsed.names.size() > static_cast<std::size_t>(k_out)) {
    parsed.violations.push_back({ViolationKind::kTruncated, 0,
                                 std::to_string(parsed.names.size()) + " accepted, " +
                                     std::to_string(k_out) + " kept"});
    parsed.names.resize(static_cast<std::size_t>(k_out));
  }
  return parsed;
}

}  // namespace rankfaith::prompt
