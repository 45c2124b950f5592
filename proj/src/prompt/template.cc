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

#include "rankfaith/prompt/template.h"

#include "rankfaith/errors.h"

namespace rankfaith::prompt {

std::string ModeName(Mode mode) {
  switch (mode) {
    case Mode::kTranslator:
      return "translator";
    case Mode::kZeroShot:
      return "zero_shot";
    case Mode::kFewShot:
      return "few_shot";
  }
  return "unknown";
}

Mode ModeFromName(std::string_view name) {
  if (name == "translator") return Mode::kTranslator;
  if (name == "zero_shot") return Mode::kZeroShot;
  if (name == "few_shot") return Mode::kFewShot;
  throw InvalidArgument("unknown prompt mode '" + std::string(name) + "'");
}

std::string RenderTemplate(std::string_view text, const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      return out;
    }
    const std::size_t close = text.find("}}", open + 2);
    if (close == std::string_view::npos) throw FormatError("unclosed template slot");
    const std::string name(text.substr(open + 2, close - open - 2));
    const auto it = slots.find(name);
    if (it == slots.end()) throw FormatError("unbound template slot '" + name + "'");
    out.append(text.substr(pos, open - pos));
    out.append(it->second);
    pos = close + 2;
  }
}

}  // namespace rankfaith::prompt
