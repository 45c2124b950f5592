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

#ifndef RANKFAITH_LLM_BOTS_H_
#define RANKFAITH_LLM_BOTS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankfaith/llm/transport.h"

namespace rankfaith::llm {

// Offline transports that answer from the prompt text alone. They read the
// last user message and reply with a numbered list.

// Prompt fields the bots rely on.
std::vector<std::string> PromptReference(std::string_view prompt);   // reference block names
std::vector<std::string> PromptVocabulary(std::string_view prompt);  // target feature names
int PromptKOut(std::string_view prompt);                              // "exactly K lines"
std::int64_t PromptInstanceId(std::string_view prompt);               // target instance
std::string PromptModelTag(std::string_view prompt);                  // target model tag

class BotTransport : public Transport {
 public:
  ChatResponse Send(const ChatRequest& request) override;

 protected:
  virtual std::vector<std::string> Answer(const ChatRequest& request, std::string_view prompt) = 0;
};

// Repeats the first K reference entries.
class EchoBot : public BotTransport {
 protected:
  std::vector<std::string> Answer(const ChatRequest&, std::string_view prompt) override;
};

// The first K reference entries in reverse order.
class ScramblerBot : public BotTransport {
 protected:
  std::vector<std::string> Answer(const ChatRequest&, std::string_view prompt) override;
};

// K features drawn uniformly without replacement from the target's
// vocabulary, seeded by the request fingerprint and `seed`.
class RandomPermutationBot : public BotTransport {
 public:
  explicit RandomPermutationBot(std::uint64_t seed) : seed_(seed) {}

 protected:
  std::vector<std::string> Answer(const ChatRequest& request, std::string_view prompt) override;

 private:
  std::uint64_t seed_;
};

// The same list every time; the vocabulary order when `names` is empty.
class ConstantListBot : public BotTransport {
 public:
  explicit ConstantListBot(std::vector<std::string> names) : names_(std::move(names)) {}

 protected:
  std::vector<std::string> Answer(const ChatRequest&, std::string_view prompt) override;

 private:
  std::vector<std::string> names_;
};

// (model tag, instance id) -> true reference ranking.
using ReferenceTable = std::map<std::pair<std::string, std::int64_t>, std::vector<std::string>>;

// Answers with the true reference ranking of the target instance.
class ReferenceLeakBot : public BotTransport {
 public:
  explicit ReferenceLeakBot(std::shared_ptr<const ReferenceTable> table)
      : table_(std::move(table)) {}

 protected:
  std::vector<std::string> Answer(const ChatRequest&, std::string_view prompt) override;

 private:
  std::shared_ptr<const ReferenceTable> table_;
};

// Transport for a provider entry. `references` feeds reference-leak bots.
std::shared_ptr<Transport> MakeTransport(const ProviderConfig& config,
                                         std::shared_ptr<const ReferenceTable> references = {});

}  // namespace rankfaith::llm

#endif  // RANKFAITH_LLM_BOTS_H_
