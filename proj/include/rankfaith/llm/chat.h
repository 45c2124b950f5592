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

#ifndef RANKFAITH_LLM_CHAT_H_
#define RANKFAITH_LLM_CHAT_H_

#include <string>
#include <vector>

#include "nlohmann/json.hpp"

namespace rankfaith::llm {

struct Message {
  std::string role;
  std::string content;

  friend bool operator==(const Message&, const Message&) = default;
};

struct ChatRequest {
  std::string provider;
  std::string model;
  std::vector<Message> messages;
  double temperature = 0.0;
  int max_tokens = 1024;

  // Wire body: {model, messages[], temperature, max_tokens}.
  nlohmann::json Body() const;
  // SHA-256 over the canonical dump of {provider, body}.
  std::string Fingerprint() const;
};

struct ChatResponse {
  std::string text;
  int status = 200;
  double latency_ms = 0.0;
  std::string provider;
  std::string model;
};

// SHA-256 of a JSON value dumped with sorted keys and no whitespace.
std::string CanonicalFingerprint(const nlohmann::json& value);

// Parses `text` first, so key order and whitespace do not matter. Throws
// FormatError on invalid JSON.
std::string CanonicalFingerprint(const std::string& text);

}  // namespace rankfaith::llm

#endif  // RANKFAITH_LLM_CHAT_H_
