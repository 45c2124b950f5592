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

#ifndef RANKFAITH_LLM_RETRY_H_
#define RANKFAITH_LLM_RETRY_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rankfaith/llm/chat.h"

namespace rankfaith::llm {

struct RetryPolicy {
  int max_attempts = 5;
  std::int64_t base_delay_ms = 500;
  std::int64_t max_delay_ms = 30000;
  std::uint64_t jitter_seed = 0;
};

struct Attempt {
  int number = 0;
  int status = 0;  // HTTP status; 0 when no response arrived
  std::string error;
  std::int64_t delay_ms = 0;  // wait before the next attempt

  friend bool operator==(const Attempt&, const Attempt&) = default;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

Sleeper RealSleeper();

// Delay before retry `attempt` (1-based): base * 2^(attempt-1), capped, plus
// up to 25% seeded jitter.
std::int64_t BackoffDelayMs(const RetryPolicy& policy, int attempt);

// Calls `call` until it returns. HttpError with a retryable status is retried
// with backoff; anything else propagates at once. Throws RetriesExhausted
// after max_attempts retryable failures. Every attempt is appended to `log`.
ChatResponse WithRetry(const std::function<ChatResponse()>& call, const RetryPolicy& policy,
                       const Sleeper& sleep, std::vector<Attempt>* log);

}  // namespace rankfaith::llm

#endif  // RANKFAITH_LLM_RETRY_H_
