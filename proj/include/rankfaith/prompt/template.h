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

#ifndef RANKFAITH_PROMPT_TEMPLATE_H_
#define RANKFAITH_PROMPT_TEMPLATE_H_

#include <map>
#include <string>
#include <string_view>

namespace rankfaith::prompt {

enum class Mode { kTranslator, kZeroShot, kFewShot };

std::string ModeName(Mode mode);  // "translator", "zero_shot", "few_shot"
Mode ModeFromName(std::string_view name);

inline constexpr std::string_view kTemplateVersion = "v1";

// Template text bundled into the binary at build time.
std::string_view TemplateText(Mode mode);

// Replaces every {{slot}} with its value. Throws FormatError on an unclosed
// or unbound slot.
std::string RenderTemplate(std::string_view text, const std::map<std::string, std::string>& slots);

}  // namespace rankfaith::prompt

#endif  // RANKFAITH_PROMPT_TEMPLATE_H_
