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

#include "rankfaith/llm/retry.h"

#include <algorithm>
#include <thread>

#include "rankfaith/errors.h"
#include "rankfaith/util/rng.h"

namespace rankfaith::llm {

Sleeper RealSleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::int64_t BackoffDelayMs(const RetryPolicy& policy, int attempt) {
  double delay = static_cast<double>(policy.base_delay_ms);
  for (int i = 1; i < attempt && delay < static_cast<double>(policy.max_delay_ms); ++i) delay *= 2;
  delay = std::min(delay, static_cast<double>(policy.max_delay_ms));
  auto rng = util::Rng::Derive(policy.jitter_seed, static_cast<std::uint64_t>(attempt));
  return static_cast<std::int64_t>(delay * (1.0 + 0.25 * rng.Uniform()));
}

ChatResponse WithRetry(const std::function<ChatResponse()>& call, const RetryPolicy& policy,
                       const Sleeper& sleep, std::vector<Attempt>* log) {
  if (policy.max_attempts < 1) throw InvalidArgument("max_attempts must be at least 1");
  for (int attempt = 1;; ++attempt) {
    Attempt record{attempt, 0, "", 0};
    try {
      ChatResponse response = call();
      record.status = response.status;
      if (log) log->push_back(record);
      return response;
    } catch (const HttpError& e) {
      record.status = e.status();
      record.error = e.what();
      const bool last = attempt >= policy.max_attempts;
      if (e.retryable() && !last) record.delay_ms = BackoffDelayMs(policy, attempt);
      if (log) log->push_back(record);
      if (!e.retryable()) throw;
      if (last) throw RetriesExhausted(attempt, e.what());
      sleep(std::chrono::milliseconds(record.delay_ms));
    }
  }
}

}  // namespace rankfaith::llm
