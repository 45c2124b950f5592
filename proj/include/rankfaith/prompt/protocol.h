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

#ifndef RANKFAITH_PROMPT_PROTOCOL_H_
#define RANKFAITH_PROMPT_PROTOCOL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankfaith/attribution/ranking.h"
#include "rankfaith/prompt/template.h"

namespace rankfaith::prompt {

// What the LLM is shown about one instance. Feature values are in the
// original feature vocabulary and schema order.
struct InstanceContext {
  std::int64_t instance_id = 0;
  std::string model_tag;
  std::vector<std::pair<std::string, std::string>> features;
  int observed = 0;
  std::string observed_label;
  double probability = 0.0;

  std::vector<std::string> vocabulary() const;
};

struct Demonstration {
  InstanceContext context;
  attribution::RankedExplanation ranking;
};

struct PromptSpec {
  Mode mode = Mode::kTranslator;
  int k_out = 0;
  std::optional<attribution::RankedExplanation> reference;
  std::vector<Demonstration> demonstrations;
  std::vector<std::string> vocabulary;
  std::string rendered_text;
};

// Markers around the reference block of a translator prompt.
inline constexpr std::string_view kReferenceBegin = "<<<REFERENCE";
inline constexpr std::string_view kReferenceEnd = "REFERENCE>>>";

// Throws InvalidArgument when K_out is outside [1, m] or `reference` is not a
// permutation of the context's features.
PromptSpec BuildTranslatorPrompt(const InstanceContext& ctx,
                                 const attribution::RankedExplanation& reference, int k_out);

PromptSpec BuildZeroShotPrompt(const InstanceContext& ctx, int k_out);

// Throws InvalidArgument unless exactly two demonstrations are given, and
// DemoCollision when one of them is the target instance.
PromptSpec BuildFewShotPrompt(const InstanceContext& ctx, std::span<const Demonstration> demos,
                              int k_out);

// The instance section shared by all templates.
std::string RenderInstance(const InstanceContext& ctx);

// "<rank>. <name>" lines for the first k entries.
std::string RenderNumberedList(std::span<const std::string> names, std::size_t k);

std::string OutputContract(int k_out);

struct DemoCandidate {
  std::int64_t instance_id = 0;
  int observed = 0;
  double probability = 0.0;
};

// One observed-default then one observed-paid instance id. Within each class
// correct predictions at `threshold` come first, then higher confidence in the
// observed class, then lower instance id. Throws InsufficientClass when a class
// is absent.
std::array<std::int64_t, 2> SelectDemonstrations(std::span<const DemoCandidate> pool,
                                                 double threshold);

}  // namespace rankfaith::prompt

#endif  // RANKFAITH_PROMPT_PROTOCOL_H_
