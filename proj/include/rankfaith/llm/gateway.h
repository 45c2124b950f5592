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

#ifndef RANKFAITH_LLM_GATEWAY_H_
#define RANKFAITH_LLM_GATEWAY_H_

#include <map>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "rankfaith/llm/cassette.h"
#include "rankfaith/llm/retry.h"
#include "rankfaith/llm/transport.h"

namespace rankfaith::llm {

enum class TransportMode { kLive, kRecord, kReplay };

std::string TransportModeName(TransportMode mode);
TransportMode TransportModeFromName(std::string_view name);

struct Completion {
  ChatResponse response;
  std::vector<Attempt> attempts;
  std::string source;  // "live", "cassette"
};

struct GatewayProvider {
  std::shared_ptr<Transport> transport;
  int max_in_flight = 4;
};

// Routes requests by provider. Live calls go through WithRetry while holding
// one of the provider's max_in_flight slots. Record mode answers from the
// cassette when it can and appends every live answer; replay mode never
// touches a transport.
class Gateway {
 public:
  Gateway(TransportMode mode, std::shared_ptr<Cassette> cassette,
          std::map<std::string, GatewayProvider> providers, RetryPolicy retry,
          Sleeper sleeper = RealSleeper());

  // Throws CassetteMiss, RetriesExhausted, HttpError or InvalidArgument for an
  // unknown provider. On a throw the attempts made so far are stored in
  // `failed_attempts` when given.
  Completion Complete(const ChatRequest& request, std::vector<Attempt>* failed_attempts = nullptr);

  TransportMode mode() const { return mode_; }

 private:
  using Semaphore = std::counting_semaphore<1 << 16>;

  ChatResponse CallLive(const ChatRequest& request, std::vector<Attempt>* log);

  TransportMode mode_;
  std::shared_ptr<Cassette> cassette_;
  std::map<std::string, GatewayProvider> providers_;
  std::map<std::string, std::unique_ptr<Semaphore>> slots_;
  RetryPolicy retry_;
  Sleeper sleeper_;
};

}  // namespace rankfaith::llm

#endif  // RANKFAITH_LLM_GATEWAY_H_
