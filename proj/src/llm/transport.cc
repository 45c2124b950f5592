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

#include "rankfaith/llm/transport.h"

#include <chrono>
#include <cstdlib>
#include <regex>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "rankfaith/errors.h"

namespace rankfaith::llm {

ProviderConfig ProviderFromJson(const nlohmann::json& j) {
  ProviderConfig c;
  try {
    c.name = j.at("name").get<std::string>();
    c.kind = j.value("kind", "http");
    c.base_url = j.value("base_url", "");
    c.api_key_env = j.value("api_key_env", "");
    c.max_in_flight = j.value("max_in_flight", 4);
    c.timeout_s = j.value("timeout_s", 120.0);
    c.headers = j.value("headers", std::map<std::string, std::string>{});
    c.options = j.value("options", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw PlanError(std::string("bad provider entry: ") + e.what());
  }
  if (c.max_in_flight < 1) throw PlanError("provider " + c.name + ": max_in_flight must be >= 1");
  if (c.kind == "http" && c.base_url.empty()) {
    throw PlanError("provider " + c.name + ": http providers need base_url");
  }
  return c;
}

HttpTransport::HttpTransport(ProviderConfig config) : config_(std::move(config)) {
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.base_url, m, url)) {
    throw InvalidArgument("bad base_url '" + config_.base_url + "'");
  }
  origin_ = m[1].str();
  prefix_ = m[2].str();
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
}

ChatResponse HttpTransport::Send(const ChatRequest& request) {
  httplib::Headers headers;
  for (const auto& [k, v] : config_.headers) headers.emplace(k, v);
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw InvalidArgument("environment variable " + config_.api_key_env + " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  httplib::Client client(origin_);
  const auto timeout = std::chrono::duration<double>(config_.timeout_s);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));

  const auto start = std::chrono::steady_clock::now();
  auto res = client.Post(prefix_ + "/v1/chat/completions", headers, request.Body().dump(),
                         "application/json");
  const double latency =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!res) throw HttpError(0, httplib::to_string(res.error()));
  if (res->status != 200) throw HttpError(res->status, res->body.substr(0, 200));

  ChatResponse out;
  out.status = res->status;
  out.latency_ms = latency;
  out.provider = config_.name;
  try {
    const auto body = nlohmann::json::parse(res->body);
    out.text = body.at("choices").at(0).at("message").at("content").get<std::string>();
    out.model = body.value("model", request.model);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("unexpected completion body: ") + e.what());
  }
  return out;
}

}  // namespace rankfaith::llm
