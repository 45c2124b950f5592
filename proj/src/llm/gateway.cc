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

#include "rankfaith/llm/gateway.h"

#include <chrono>
#include <ctime>

#include "rankfaith/errors.h"

namespace rankfaith::llm {

std::string TransportModeName(TransportMode mode) {
  switch (mode) {
    case TransportMode::kLive:
      return "live";
    case TransportMode::kRecord:
      return "record";
    case TransportMode::kReplay:
      return "replay";
  }
  return "unknown";
}

TransportMode TransportModeFromName(std::string_view name) {
  if (name == "live") return TransportMode::kLive;
  if (name == "record") return TransportMode::kRecord;
  if (name == "replay") return TransportMode::kReplay;
  throw InvalidArgument("unknown transport mode '" + std::string(name) + "'");
}

namespace {

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Gateway::Gateway(TransportMode mode, std::shared_ptr<Cassette> cassette,
                 std::map<std::string, GatewayProvider> providers, RetryPolicy retry,
                 Sleeper sleeper)
    : mode_(mode),
      cassette_(std::move(cassette)),
      providers_(std::move(providers)),
      retry_(retry),
      sleeper_(std::move(sleeper)) {
  if (mode_ != TransportMode::kLive && !cassette_) {
    throw InvalidArgument(TransportModeName(mode_) + " mode needs a cassette");
  }
  for (const auto& [name, p] : providers_) {
    if (p.max_in_flight < 1) throw InvalidArgument("provider " + name + ": max_in_flight < 1");
    slots_.emplace(name, std::make_unique<Semaphore>(p.max_in_flight));
  }
}

ChatResponse Gateway::CallLive(const ChatRequest& request, std::vector<Attempt>* log) {
  const auto it = providers_.find(request.provider);
  if (it == providers_.end() || !it->second.transport) {
    throw InvalidArgument("no transport for provider '" + request.provider + "'");
  }
  Semaphore& slot = *slots_.at(request.provider);
  Transport& transport = *it->second.transport;
  return WithRetry(
      [&] {
        slot.acquire();
        struct Release {
          Semaphore& s;
          ~Release() { s.release(); }
        } release{slot};
        const auto start = std::chrono::steady_clock::now();
        ChatResponse r = transport.Send(request);
        if (r.latency_ms == 0.0) {
          r.latency_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        }
        return r;
      },
      retry_, sleeper_, log);
}

Completion Gateway::Complete(const ChatRequest& request, std::vector<Attempt>* failed_attempts) {
  Completion c;
  const std::string fingerprint = request.Fingerprint();
  if (mode_ != TransportMode::kLive) {
    if (auto hit = cassette_->Find(fingerprint)) {
      c.response = {hit->text, hit->status, hit->latency_ms, hit->provider, hit->model};
      c.attempts.push_back({1, hit->status, "", 0});
      c.source = "cassette";
      return c;
    }
    if (mode_ == TransportMode::kReplay) {
      throw CassetteMiss("no cassette entry for " + request.provider + "/" + request.model +
                         " request " + fingerprint.substr(0, 16));
    }
  }
  try {
    c.response = CallLive(request, &c.attempts);
  } catch (...) {
    if (failed_attempts) *failed_attempts = c.attempts;
    throw;
  }
  c.source = "live";
  if (mode_ == TransportMode::kRecord) {
    cassette_->Append({fingerprint, request.provider, request.model, c.response.text,
                       c.response.status, c.response.latency_ms, UtcNow(), request.Body()});
  }
  return c;
}

}  // namespace rankfaith::llm
