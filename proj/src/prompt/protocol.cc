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

#include "rankfaith/prompt/protocol.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "rankfaith/errors.h"
#include "rankfaith/util/format.h"

namespace rankfaith::prompt {

std::vector<std::string> InstanceContext::vocabulary() const {
  std::vector<std::string> names;
  names.reserve(features.size());
  for (const auto& [name, value] : features) names.push_back(name);
  return names;
}

namespace {

void CheckKOut(const InstanceContext& ctx, int k_out) {
  if (k_out < 1 || static_cast<std::size_t>(k_out) > ctx.features.size()) {
    throw InvalidArgument("K_out=" + std::to_string(k_out) + " outside [1, " +
                          std::to_string(ctx.features.size()) + "]");
  }
}

void CheckCoversVocabulary(const attribution::RankedExplanation& ranking,
                           const std::vector<std::string>& vocabulary, const std::string& what) {
  std::multiset<std::string> got;
  for (const auto& f : ranking) got.insert(f.name);
  const std::multiset<std::string> want(vocabulary.begin(), vocabulary.end());
  if (got != want) throw InvalidArgument(what + " is not a permutation of the instance features");
}

std::string RenderReference(const attribution::RankedExplanation& reference) {
  std::string out;
  char value[64];
  for (std::size_t i = 0; i < reference.size(); ++i) {
    std::snprintf(value, sizeof(value), "%+.4f", reference[i].value);
    out += std::to_string(i + 1) + ". " + reference[i].name + " (" + value + ")";
    if (i + 1 < reference.size()) out += '\n';
  }
  return out;
}

std::vector<std::string> Names(const attribution::RankedExplanation& ranking) {
  std::vector<std::string> names;
  for (const auto& f : ranking) names.push_back(f.name);
  return names;
}

}  // namespace

std::string RenderInstance(const InstanceContext& ctx) {
  std::string out;
  out += "Instance: " + std::to_string(ctx.instance_id) + "\n";
  out += "Model: " + ctx.model_tag + "\n";
  out += "Features:\n";
  for (const auto& [name, value] : ctx.features) out += "- " + name + ": " + value + "\n";
  out += "Observed outcome: " + ctx.observed_label + " (y = " + std::to_string(ctx.observed) + ")\n";
  out += "Predicted probability of default: " + util::Fixed(ctx.probability, 4);
  return out;
}

std::string RenderNumberedList(std::span<const std::string> names, std::size_t k) {
  std::string out;
  const std::size_t n = std::min(k, names.size());
  for (std::size_t i = 0; i < n; ++i) {
    out += std::to_string(i + 1) + ". " + names[i];
    if (i + 1 < n) out += '\n';
  }
  return out;
}

std::string OutputContract(int k_out) {
  const std::string k = std::to_string(k_out);
  return "Reply with exactly " + k +
         " lines and nothing else. Each line must read \"<rank>. <feature name>\", with ranks 1 to " +
         k + " in order. Use only feature names listed under \"Features:\" above, each at most once.";
}

PromptSpec BuildTranslatorPrompt(const InstanceContext& ctx,
                                 const attribution::RankedExplanation& reference, int k_out) {
  CheckKOut(ctx, k_out);
  PromptSpec spec;
  spec.mode = Mode::kTranslator;
  spec.k_out = k_out;
  spec.vocabulary = ctx.vocabulary();
  CheckCoversVocabulary(reference, spec.vocabulary, "reference ranking");
  spec.reference = reference;
  spec.rendered_text = RenderTemplate(TemplateText(Mode::kTranslator),
                                      {{"instance", RenderInstance(ctx)},
                                       {"reference", RenderReference(reference)},
                                       {"k_out", std::to_string(k_out)},
                                       {"contract", OutputContract(k_out)}});
  return spec;
}

PromptSpec BuildZeroShotPrompt(const InstanceContext& ctx, int k_out) {
  CheckKOut(ctx, k_out);
  PromptSpec spec;
  spec.mode = Mode::kZeroShot;
  spec.k_out = k_out;
  spec.vocabulary = ctx.vocabulary();
  spec.rendered_text =
      RenderTemplate(TemplateText(Mode::kZeroShot),
                     {{"instance", RenderInstance(ctx)}, {"contract", OutputContract(k_out)}});
  return spec;
}

PromptSpec BuildFewShotPrompt(const InstanceContext& ctx, std::span<const Demonstration> demos,
                              int k_out) {
  CheckKOut(ctx, k_out);
  if (demos.size() != 2) {
    throw InvalidArgument("few-shot prompts take exactly 2 demonstrations, got " +
                          std::to_string(demos.size()));
  }
  PromptSpec spec;
  spec.mode = Mode::kFewShot;
  spec.k_out = k_out;
  spec.vocabulary = ctx.vocabulary();
  std::string blocks;
  for (std::size_t i = 0; i < demos.size(); ++i) {
    const auto& demo = demos[i];
    if (demo.context.instance_id == ctx.instance_id) {
      throw DemoCollision("instance " + std::to_string(ctx.instance_id) +
                          " is its own demonstration");
    }
    if (demo.context.vocabulary() != spec.vocabulary) {
      throw InvalidArgument("demonstration features differ from the target's");
    }
    CheckCoversVocabulary(demo.ranking, spec.vocabulary, "demonstration ranking");
    const auto names = Names(demo.ranking);
    if (i > 0) blocks += "\n\n";
    blocks += "Example " + std::to_string(i + 1) + "\n" + RenderInstance(demo.context) +
              "\nRanking:\n" + RenderNumberedList(names, static_cast<std::size_t>(k_out));
  }
  spec.demonstrations.assign(demos.begin(), demos.end());
  spec.rendered_text = RenderTemplate(TemplateText(Mode::kFewShot),
                                      {{"demonstrations", blocks},
                                       {"instance", RenderInstance(ctx)},
                                       {"contract", OutputContract(k_out)}});
  return spec;
}

std::array<std::int64_t, 2> SelectDemonstrations(std::span<const DemoCandidate> pool,
                                                 double threshold) {
  std::array<std::int64_t, 2> picked{};
  for (int slot = 0; slot < 2; ++slot) {
    const int cls = slot == 0 ? 1 : 0;
    const DemoCandidate* best = nullptr;
    auto key = [&](const DemoCandidate& c) {
      const bool correct = cls == 1 ? c.probability >= threshold : c.probability < threshold;
      const double confidence = cls == 1 ? c.probability : 1.0 - c.probability;
      return std::make_tuple(correct, confidence, -c.instance_id);
    };
    for (const auto& c : pool) {
      if (c.observed != cls) continue;
      if (best == nullptr || key(c) > key(*best)) best = &c;
    }
    if (best == nullptr) {
      throw InsufficientClass("demonstration pool has no instance with y = " + std::to_string(cls));
    }
    picked[slot] = best->instance_id;
  }
  return picked;
}

}  // namespace rankfaith::prompt
