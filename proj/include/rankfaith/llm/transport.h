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

#ifndef RANKFAITH_LLM_TRANSPORT_H_
#define RANKFAITH_LLM_TRANSPORT_H_

#include <map>
#include <memory>
#include <string>

#include "rankfaith/llm/chat.h"

namespace rankfaith::llm {

class Transport {
 public:
  virtual ~Transport() = default;
  // Performs one exchange. Throws HttpError on failure.
  virtual ChatResponse Send(const ChatRequest& request) = 0;
};

struct ProviderConfig {
  std::string name;
  // "http" or one of the offline bots: "echo", "scrambler",
  // "random-permutation", "constant-list", "reference-leak".
  std::string kind = "http";
  std::string base_url;  // scheme://host[:port][/prefix]
  std::string api_key_env;
  int max_in_flight = 4;
  double timeout_s = 120.0;
  std::map<std::string, std::string> headers;
  nlohmann::json options = nlohmann::json::object();  // bot-specific settings
};

ProviderConfig ProviderFromJson(const nlohmann::json& j);

// OpenAI-compatible chat completions: POST {prefix}/v1/chat/completions,
// reply read from choices[0].message.content. The API key is read from the
// environment on each call and sent as a bearer token.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(ProviderConfig config);
  ChatResponse Send(const ChatRequest& request) override;

 private:
  ProviderConfig config_;
  std::string origin_;
  std::string prefix_;
};

}  // namespace rankfaith::llm

#endif  // RANKFAITH_LLM_TRANSPORT_H_
