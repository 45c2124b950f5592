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

#include "rankfaith/llm/bots.h"

#include <algorithm>
#include <regex>

#include "rankfaith/errors.h"
#include "rankfaith/prompt/protocol.h"
#include "rankfaith/prompt/template.h"
#include "rankfaith/util/format.h"
#include "rankfaith/util/hash.h"
#include "rankfaith/util/rng.h"

namespace rankfaith::llm {

namespace {

std::vector<std::string> Lines(std::string_view text) { return util::Split(text, '\n'); }

// Lines of the last "Instance:" section of the prompt.
std::vector<std::string> TargetSection(std::string_view prompt) {
  const auto lines = Lines(prompt);
  std::size_t start = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].rfind("Instance: ", 0) == 0) start = i;
  }
  if (start == lines.size()) throw FormatError("prompt has no instance section");
  return {lines.begin() + static_cast<std::ptrdiff_t>(start), lines.end()};
}

std::string Reply(const std::vector<std::string>& names) {
  return prompt::RenderNumberedList(names, names.size());
}

std::vector<std::string> Head(std::vector<std::string> names, int k) {
  if (names.size() > static_cast<std::size_t>(k)) names.resize(static_cast<std::size_t>(k));
  return names;
}

}  // namespace

std::vector<std::string> PromptReference(std::string_view prompt) {
  static const std::regex item(R"(^\d+\. (.+) \([+-][0-9.]+\)$)");
  std::vector<std::string> names;
  bool inside = false;
  for (const auto& line : Lines(prompt)) {
    if (line == prompt::kReferenceBegin) {
      inside = true;
      continue;
    }
    if (line == prompt::kReferenceEnd) return names;
    std::smatch m;
    if (inside && std::regex_match(line, m, item)) names.push_back(m[1].str());
  }
  throw FormatError("prompt has no reference block");
}

std::vector<std::string> PromptVocabulary(std::string_view prompt) {
  std::vector<std::string> names;
  bool inside = false;
  for (const auto& line : TargetSection(prompt)) {
    if (line == "Features:") {
      inside = true;
      continue;
    }
    if (!inside) continue;
    if (line.rfind("- ", 0) != 0) break;
    const auto colon = line.find(": ", 2);
    if (colon == std::string::npos) throw FormatError("bad feature line '" + line + "'");
    names.push_back(line.substr(2, colon - 2));
  }
  if (names.empty()) throw FormatError("prompt has no feature table");
  return names;
}

int PromptKOut(std::string_view prompt) {
  static const std::regex re(R"(exactly (\d+) lines)");
  const std::string text(prompt);
  std::smatch m;
  if (!std::regex_search(text, m, re)) throw FormatError("prompt states no output length");
  return std::stoi(m[1].str());
}

std::int64_t PromptInstanceId(std::string_view prompt) {
  return std::stoll(TargetSection(prompt).front().substr(10));
}

std::string PromptModelTag(std::string_view prompt) {
  for (const auto& line : TargetSection(prompt)) {
    if (line.rfind("Model: ", 0) == 0) return line.substr(7);
  }
  throw FormatError("prompt has no model tag");
}

ChatResponse BotTransport::Send(const ChatRequest& request) {
  std::string_view prompt;
  for (const auto& m : request.messages) {
    if (m.role == "user") prompt = m.content;
  }
  ChatResponse out;
  out.text = Reply(Answer(request, prompt));
  out.provider = request.provider;
  out.model = request.model;
  return out;
}

std::vector<std::string> EchoBot::Answer(const ChatRequest&, std::string_view prompt) {
  return Head(PromptReference(prompt), PromptKOut(prompt));
}

std::vector<std::string> ScramblerBot::Answer(const ChatRequest&, std::string_view prompt) {
  auto names = Head(PromptReference(prompt), PromptKOut(prompt));
  std::reverse(names.begin(), names.end());
  return names;
}

std::vector<std::string> RandomPermutationBot::Answer(const ChatRequest& request,
                                                      std::string_view prompt) {
  auto names = PromptVocabulary(prompt);
  auto rng = util::Rng::Derive(seed_, util::Hash64(request.Fingerprint()));
  rng.Shuffle(names);
  return Head(std::move(names), PromptKOut(prompt));
}

std::vector<std::string> ConstantListBot::Answer(const ChatRequest&, std::string_view prompt) {
  return Head(names_.empty() ? PromptVocabulary(prompt) : names_, PromptKOut(prompt));
}

std::vector<std::string> ReferenceLeakBot::Answer(const ChatRequest&, std::string_view prompt) {
  const auto key = std::make_pair(PromptModelTag(prompt), PromptInstanceId(prompt));
  const auto it = table_ ? table_->find(key) : ReferenceTable::const_iterator{};
  if (!table_ || it == table_->end()) {
    throw InvalidArgument("no reference for " + key.first + "/" + std::to_string(key.second));
  }
  return Head(it->second, PromptKOut(prompt));
}

std::shared_ptr<Transport> MakeTransport(const ProviderConfig& config,
                                         std::shared_ptr<const ReferenceTable> references) {
  if (config.kind == "http") return std::make_shared<HttpTransport>(config);
  if (config.kind == "echo") return std::make_shared<EchoBot>();
  if (config.kind == "scrambler") return std::make_shared<ScramblerBot>();
  if (config.kind == "random-permutation") {
    return std::make_shared<RandomPermutationBot>(config.options.value("seed", std::uint64_t{0}));
  }
  if (config.kind == "constant-list") {
    return std::make_shared<ConstantListBot>(
        config.options.value("features", std::vector<std::string>{}));
  }
  if (config.kind == "reference-leak") return std::make_shared<ReferenceLeakBot>(references);
  throw PlanError("provider " + config.name + ": unknown kind '" + config.kind + "'");
}

}  // namespace rankfaith::llm
