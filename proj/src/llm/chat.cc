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

#include "rankfaith/llm/chat.h"

#include "rankfaith/errors.h"
#include "rankfaith/util/hash.h"

namespace rankfaith::llm {

nlohmann::json ChatRequest::Body() const {
  nlohmann::json messages_json = nlohmann::json::array();
  for (const auto& m : messages) messages_json.push_back({{"role", m.role}, {"content", m.content}});
  return {{"model", model},
          {"messages", messages_json},
          {"temperature", temperature},
          {"max_tokens", max_tokens}};
}

std::string ChatRequest::Fingerprint() const {
  return CanonicalFingerprint(nlohmann::json{{"provider", provider}, {"body", Body()}});
}

std::string CanonicalFingerprint(const nlohmann::json& value) {
  // nlohmann::json objects keep keys sorted, so dump() is canonical.
  return util::Sha256Hex(value.dump());
}

std::string CanonicalFingerprint(const std::string& text) {
  try {
    return CanonicalFingerprint(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace rankfaith::llm
