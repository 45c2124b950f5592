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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "fixtures.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "nlohmann/json.hpp"
#include "rankfaith/errors.h"
#include "rankfaith/llm/bots.h"
#include "rankfaith/llm/cassette.h"
#include "rankfaith/llm/chat.h"
#include "rankfaith/llm/gateway.h"
#include "rankfaith/llm/retry.h"
#include "rankfaith/llm/transport.h"
#include "rankfaith/prompt/parser.h"
#include "rankfaith/prompt/protocol.h"

namespace rankfaith::llm {
namespace {

using json = nlohmann::json;
using Names = std::vector<std::string>;

ChatRequest Request(const std::string& provider, const std::string& text) {
  ChatRequest r;
  r.provider = provider;
  r.model = "m-1";
  r.messages = {{"user", text}};
  return r;
}

// Answers from a script of statuses; 200 yields a fixed reply.
class ScriptedTransport : public Transport {
 public:
  explicit ScriptedTransport(std::deque<int> statuses) : statuses_(std::move(statuses)) {}
  ChatResponse Send(const ChatRequest& request) override {
    ++calls;
    const int status = statuses_.empty() ? 200 : statuses_.front();
    if (!statuses_.empty()) statuses_.pop_front();
    if (status != 200) throw HttpError(status, "scripted");
    return {"1. a", 200, 1.0, request.provider, request.model};
  }
  int calls = 0;

 private:
  std::deque<int> statuses_;
};

// Tracks the largest number of concurrent Send calls.
class CountingTransport : public Transport {
 public:
  ChatResponse Send(const ChatRequest& request) override {
    const int now = ++in_flight;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(30));
    --in_flight;
    return {"1. a", 200, 1.0, request.provider, request.model};
  }
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
};

std::vector<std::chrono::milliseconds> g_sleeps;
void RecordSleep(std::chrono::milliseconds d) { g_sleeps.push_back(d); }

TEST(ChatTest, BodyCarriesWireFields) {
  auto r = Request("p", "hello");
  const auto body = r.Body();
  EXPECT_EQ(body.at("model"), "m-1");
  EXPECT_EQ(body.at("temperature"), 0.0);
  EXPECT_EQ(body.at("max_tokens"), 1024);
  EXPECT_EQ(body.at("messages")[0].at("role"), "user");
  EXPECT_EQ(body.at("messages")[0].at("content"), "hello");
}

TEST(ChatTest, FingerprintIgnoresKeyOrderAndWhitespace) {
  const std::string a = R"({"model":"x","messages":[{"role":"user","content":"hi"}],"temperature":0})";
  const std::string b = "{\n  \"temperature\": 0,\n  \"messages\": [ {\"content\": \"hi\", \"role\": \"user\"} ],\n  \"model\": \"x\"\n}";
  EXPECT_EQ(CanonicalFingerprint(a), CanonicalFingerprint(b));
  EXPECT_NE(CanonicalFingerprint(a), CanonicalFingerprint(std::string(R"({"model":"y"})")));
  EXPECT_EQ(CanonicalFingerprint(a).size(), 64u);
  EXPECT_THROW(CanonicalFingerprint(std::string("{not json")), FormatError);
}

TEST(ChatTest, FingerprintSeparatesRequests) {
  const auto base = Request("p", "hello");
  EXPECT_EQ(base.Fingerprint(), Request("p", "hello").Fingerprint());
  EXPECT_NE(base.Fingerprint(), Request("q", "hello").Fingerprint());
  EXPECT_NE(base.Fingerprint(), Request("p", "hello!").Fingerprint());
  auto warm = base;
  warm.temperature = 0.7;
  EXPECT_NE(base.Fingerprint(), warm.Fingerprint());
}

TEST(CassetteTest, PersistsAndReloadsFirstEntryPerFingerprint) {
  testing::TempDir dir;
  const auto path = dir / "sub" / "cassette.jsonl";
  {
    Cassette c(path);
    EXPECT_EQ(c.size(), 0u);
    c.Append({"f1", "p", "m", "one", 200, 3.5, "2026-01-01T00:00:00Z", json{{"k", 1}}});
    c.Append({"f2", "p", "m", "two", 200, 1.0, "t", json::object()});
    c.Append({"f1", "p", "m", "other", 200, 1.0, "t", json::object()});
    EXPECT_EQ(c.size(), 2u);
    EXPECT_EQ(c.Find("f1")->text, "one");
  }
  Cassette again(path);
  EXPECT_EQ(again.size(), 2u);
  const auto e = again.Find("f1");
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->text, "one");
  EXPECT_EQ(e->latency_ms, 3.5);
  EXPECT_EQ(e->request, (json{{"k", 1}}));
  EXPECT_FALSE(again.Find("f3").has_value());
}

TEST(CassetteTest, EntryJsonRoundTrips) {
  const CassetteEntry e{"fp", "prov", "mod", "1. a\n2. b", 200, 12.25, "ts", json{{"x", "y"}}};
  const auto back = CassetteEntryFromJson(ToJson(e));
  EXPECT_EQ(back.fingerprint, e.fingerprint);
  EXPECT_EQ(back.text, e.text);
  EXPECT_EQ(back.latency_ms, e.latency_ms);
  EXPECT_EQ(back.request, e.request);
}

TEST(RetryTest, FirstSuccessLogsOneAttempt) {
  ScriptedTransport t({});
  std::vector<Attempt> log;
  g_sleeps.clear();
  WithRetry([&] { return t.Send(Request("p", "x")); }, {}, RecordSleep, &log);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0], (Attempt{1, 200, "", 0}));
  EXPECT_TRUE(g_sleeps.empty());
}

TEST(RetryTest, TwoRateLimitsThenSuccessLogsThree) {
  ScriptedTransport t({429, 429});
  std::vector<Attempt> log;
  g_sleeps.clear();
  RetryPolicy policy;
  policy.jitter_seed = 4;
  WithRetry([&] { return t.Send(Request("p", "x")); }, policy, RecordSleep, &log);
  ASSERT_EQ(log.size(), 3u);
  EXPECT_EQ(log[0].status, 429);
  EXPECT_EQ(log[1].status, 429);
  EXPECT_EQ(log[2].status, 200);
  ASSERT_EQ(g_sleeps.size(), 2u);
  EXPECT_EQ(g_sleeps[0].count(), log[0].delay_ms);
  EXPECT_EQ(g_sleeps[1].count(), log[1].delay_ms);
  EXPECT_GE(log[0].delay_ms, 500);
  EXPECT_LE(log[0].delay_ms, 625);
  EXPECT_GE(log[1].delay_ms, 1000);
  EXPECT_LE(log[1].delay_ms, 1250);
}

TEST(RetryTest, UnauthorizedFailsImmediately) {
  ScriptedTransport t({401});
  std::vector<Attempt> log;
  g_sleeps.clear();
  try {
    WithRetry([&] { return t.Send(Request("p", "x")); }, {}, RecordSleep, &log);
    FAIL() << "expected HttpError";
  } catch (const HttpError& e) {
    EXPECT_EQ(e.status(), 401);
  }
  EXPECT_EQ(t.calls, 1);
  EXPECT_EQ(log.size(), 1u);
  EXPECT_TRUE(g_sleeps.empty());
}

TEST(RetryTest, ExhaustionCarriesLastError) {
  ScriptedTransport t({500, 502, 503});
  std::vector<Attempt> log;
  RetryPolicy policy;
  policy.max_attempts = 3;
  try {
    WithRetry([&] { return t.Send(Request("p", "x")); }, policy, RecordSleep, &log);
    FAIL() << "expected RetriesExhausted";
  } catch (const RetriesExhausted& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_NE(e.last_error().find("503"), std::string::npos);
  }
  EXPECT_EQ(log.size(), 3u);
  EXPECT_EQ(log.back().delay_ms, 0);
}

TEST(RetryTest, BackoffIsCappedAndSeeded) {
  RetryPolicy p;
  p.base_delay_ms = 100;
  p.max_delay_ms = 1000;
  p.jitter_seed = 9;
  for (int a = 1; a < 20; ++a) {
    const auto d = BackoffDelayMs(p, a);
    EXPECT_EQ(d, BackoffDelayMs(p, a));
    EXPECT_LE(d, 1250);
  }
  EXPECT_GE(BackoffDelayMs(p, 12), 1000);
}

TEST(GatewayTest, RecordThenReplayReturnsSameResponse) {
  testing::TempDir dir;
  auto cassette = std::make_shared<Cassette>(dir / "c.jsonl");
  auto transport = std::make_shared<ScriptedTransport>(std::deque<int>{429});
  Gateway record(TransportMode::kRecord, cassette, {{"p", {transport, 2}}}, {}, RecordSleep);
  const auto req = Request("p", "rank these");
  const auto live = record.Complete(req);
  EXPECT_EQ(live.source, "live");
  EXPECT_EQ(live.attempts.size(), 2u);
  EXPECT_EQ(cassette->size(), 1u);
  // A second record pass reuses the stored answer.
  EXPECT_EQ(record.Complete(req).source, "cassette");
  EXPECT_EQ(transport->calls, 2);

  auto reloaded = std::make_shared<Cassette>(dir / "c.jsonl");
  Gateway replay(TransportMode::kReplay, reloaded, {}, {}, RecordSleep);
  const auto again = replay.Complete(req);
  EXPECT_EQ(again.source, "cassette");
  EXPECT_EQ(again.response.text, live.response.text);
  EXPECT_EQ(again.response.status, live.response.status);
  EXPECT_EQ(again.response.latency_ms, live.response.latency_ms);
  EXPECT_EQ(again.response.provider, live.response.provider);
  EXPECT_EQ(again.response.model, live.response.model);
  EXPECT_THROW(replay.Complete(Request("p", "something else")), CassetteMiss);
}

TEST(GatewayTest, ReplayNeedsCassetteAndLiveNeedsProvider) {
  EXPECT_THROW(Gateway(TransportMode::kReplay, nullptr, {}, {}), InvalidArgument);
  Gateway live(TransportMode::kLive, nullptr, {}, {}, RecordSleep);
  EXPECT_THROW(live.Complete(Request("nobody", "x")), InvalidArgument);
}

TEST(GatewayTest, FailedAttemptsAreReported) {
  auto transport = std::make_shared<ScriptedTransport>(std::deque<int>{503, 400});
  Gateway live(TransportMode::kLive, nullptr, {{"p", {transport, 1}}}, {}, RecordSleep);
  std::vector<Attempt> attempts;
  EXPECT_THROW(live.Complete(Request("p", "x"), &attempts), HttpError);
  ASSERT_EQ(attempts.size(), 2u);
  EXPECT_EQ(attempts[0].status, 503);
  EXPECT_EQ(attempts[1].status, 400);
}

TEST(GatewayTest, InFlightBoundHolds) {
  auto transport = std::make_shared<CountingTransport>();
  Gateway live(TransportMode::kLive, nullptr, {{"p", {transport, 3}}}, {}, RecordSleep);
  std::vector<std::thread> threads;
  for (int i = 0; i < 12; ++i) {
    threads.emplace_back([&, i] { live.Complete(Request("p", "q" + std::to_string(i))); });
  }
  for (auto& t : threads) t.join();
  EXPECT_LE(transport->peak.load(), 3);
  EXPECT_GE(transport->peak.load(), 2);
}

TEST(GatewayTest, ModeNamesRoundTrip) {
  for (auto m : {TransportMode::kLive, TransportMode::kRecord, TransportMode::kReplay}) {
    EXPECT_EQ(TransportModeFromName(TransportModeName(m)), m);
  }
  EXPECT_THROW(TransportModeFromName("offline"), InvalidArgument);
}

class LocalServer {
 public:
  LocalServer() {
    server_.Post("/api/v1/chat/completions", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
      std::lock_guard lock(mu_);
      auth.push_back(req.get_header_value("Authorization"));
      bodies.push_back(json::parse(req.body));
      if (fail_next > 0) {
        --fail_next;
        res.status = 503;
        res.set_content("busy", "text/plain");
        return;
      }
      const json reply{{"model", "served-model"},
                       {"choices", json::array({{{"message", {{"role", "assistant"},
                                                              {"content", "1. dti\n2. grade"}}}}})}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/api"; }

  std::vector<std::string> auth;
  std::vector<json> bodies;
  int fail_next = 0;

 private:
  httplib::Server server_;
  std::thread thread_;
  std::mutex mu_;
  int port_ = 0;
};

TEST(HttpTransportTest, SpeaksChatCompletionsAndKeepsKeysOutOfCassettes) {
  LocalServer server;
  server.fail_next = 1;
  ::setenv("RANKFAITH_TEST_API_KEY", "sk-test-do-not-persist", 1);
  ProviderConfig config;
  config.name = "local";
  config.base_url = server.url();
  config.api_key_env = "RANKFAITH_TEST_API_KEY";
  config.timeout_s = 10;
  testing::TempDir dir;
  auto cassette = std::make_shared<Cassette>(dir / "c.jsonl");
  RetryPolicy policy;
  policy.base_delay_ms = 1;
  Gateway gw(TransportMode::kRecord, cassette,
             {{"local", {std::make_shared<HttpTransport>(config), 2}}}, policy, RecordSleep);
  auto req = Request("local", "rank");
  req.model = "gpt-x";
  const auto c = gw.Complete(req);
  EXPECT_EQ(c.response.text, "1. dti\n2. grade");
  EXPECT_EQ(c.response.model, "served-model");
  EXPECT_EQ(c.attempts.size(), 2u);
  ASSERT_EQ(server.bodies.size(), 2u);
  EXPECT_EQ(server.bodies[1], req.Body());
  EXPECT_EQ(server.auth[1], "Bearer sk-test-do-not-persist");

  const std::string stored = testing::ReadFile(dir / "c.jsonl");
  EXPECT_FALSE(stored.empty());
  EXPECT_EQ(stored.find("sk-test-do-not-persist"), std::string::npos);

  ::unsetenv("RANKFAITH_TEST_API_KEY");
  EXPECT_THROW(HttpTransport(config).Send(req), InvalidArgument);
}

TEST(HttpTransportTest, UnreachableServerIsRetryable) {
  ProviderConfig config;
  config.name = "dead";
  config.base_url = "http://127.0.0.1:1";
  config.timeout_s = 2;
  try {
    HttpTransport(config).Send(Request("dead", "x"));
    FAIL() << "expected HttpError";
  } catch (const HttpError& e) {
    EXPECT_EQ(e.status(), 0);
    EXPECT_TRUE(e.retryable());
  }
  config.base_url = "ftp://nowhere";
  EXPECT_THROW(HttpTransport{config}, InvalidArgument);
}

TEST(ProviderTest, ParsesEntriesAndRejectsBadOnes) {
  const auto p = ProviderFromJson(json::parse(
      R"({"name":"a","base_url":"https://x.example/v","api_key_env":"K","max_in_flight":2})"));
  EXPECT_EQ(p.kind, "http");
  EXPECT_EQ(p.max_in_flight, 2);
  EXPECT_THROW(ProviderFromJson(json::parse(R"({"name":"a"})")), PlanError);
  EXPECT_THROW(ProviderFromJson(json::parse(R"({"kind":"echo"})")), PlanError);
  EXPECT_THROW(ProviderFromJson(json::parse(R"({"name":"a","kind":"echo","max_in_flight":0})")),
               PlanError);
  ProviderConfig unknown;
  unknown.name = "u";
  unknown.kind = "oracle";
  EXPECT_THROW(MakeTransport(unknown), PlanError);
}

prompt::InstanceContext Context() {
  prompt::InstanceContext ctx;
  ctx.instance_id = 42;
  ctx.model_tag = "logistic";
  for (const auto& n : Names{"a", "b", "c", "d", "e", "f"}) ctx.features.push_back({n, "1"});
  ctx.observed_label = "Fully Paid";
  ctx.probability = 0.2;
  return ctx;
}

attribution::RankedExplanation Reference() {
  return {{"d", 0.9}, {"b", -0.5}, {"f", 0.4}, {"a", 0.3}, {"c", -0.2}, {"e", 0.1}};
}

std::string Ask(Transport& t, const std::string& prompt) {
  return t.Send(Request("bot", prompt)).text;
}

TEST(BotTest, PromptFieldsAreRecovered) {
  const auto prompt = prompt::BuildTranslatorPrompt(Context(), Reference(), 4).rendered_text;
  EXPECT_EQ(PromptReference(prompt), (Names{"d", "b", "f", "a", "c", "e"}));
  EXPECT_EQ(PromptVocabulary(prompt), (Names{"a", "b", "c", "d", "e", "f"}));
  EXPECT_EQ(PromptKOut(prompt), 4);
  EXPECT_EQ(PromptInstanceId(prompt), 42);
  EXPECT_EQ(PromptModelTag(prompt), "logistic");
}

TEST(BotTest, EchoAndScrambler) {
  const auto prompt = prompt::BuildTranslatorPrompt(Context(), Reference(), 4).rendered_text;
  EchoBot echo;
  ScramblerBot scrambler;
  EXPECT_EQ(Ask(echo, prompt), "1. d\n2. b\n3. f\n4. a");
  EXPECT_EQ(Ask(scrambler, prompt), "1. a\n2. f\n3. b\n4. d");
  const auto zero = prompt::BuildZeroShotPrompt(Context(), 3).rendered_text;
  EXPECT_THROW(Ask(echo, zero), FormatError);
}

TEST(BotTest, RandomPermutationIsSeededByRequest) {
  const auto prompt = prompt::BuildZeroShotPrompt(Context(), 6).rendered_text;
  RandomPermutationBot bot(3);
  const auto first = Ask(bot, prompt);
  EXPECT_EQ(first, Ask(bot, prompt));
  const auto parsed = prompt::ParseRanking(first, Context().vocabulary(), 6);
  EXPECT_EQ(parsed.names.size(), 6u);
  EXPECT_TRUE(parsed.violations.empty());
  std::set<std::string> seen;
  for (std::uint64_t s = 0; s < 30; ++s) {
    RandomPermutationBot other(s);
    seen.insert(Ask(other, prompt));
  }
  EXPECT_GT(seen.size(), 10u);
}

TEST(BotTest, ConstantListAndReferenceLeak) {
  const auto prompt = prompt::BuildZeroShotPrompt(Context(), 3).rendered_text;
  ConstantListBot fixed(Names{"e", "a", "c", "b"});
  EXPECT_EQ(Ask(fixed, prompt), "1. e\n2. a\n3. c");
  ConstantListBot vocab_order(Names{});
  EXPECT_EQ(Ask(vocab_order, prompt), "1. a\n2. b\n3. c");

  auto table = std::make_shared<ReferenceTable>();
  (*table)[{"logistic", 42}] = Names{"d", "b", "f", "a", "c", "e"};
  ReferenceLeakBot leak(table);
  EXPECT_EQ(Ask(leak, prompt), "1. d\n2. b\n3. f");
  auto other = Context();
  other.instance_id = 7;
  EXPECT_THROW(Ask(leak, prompt::BuildZeroShotPrompt(other, 3).rendered_text), InvalidArgument);
}

TEST(BotTest, FactoryBuildsEveryKind) {
  for (const std::string kind :
       {"echo", "scrambler", "random-permutation", "constant-list", "reference-leak"}) {
    ProviderConfig c;
    c.name = kind;
    c.kind = kind;
    EXPECT_NE(MakeTransport(c), nullptr) << kind;
  }
}

}  // namespace
}  // namespace rankfaith::llm
