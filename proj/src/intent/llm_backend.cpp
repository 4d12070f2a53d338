// Copyright 2026 The vpisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vpi/intent/llm_backend.hpp"

#include "vpi/intent/response_parser.hpp"
#include "vpi/perception/kinematic_json.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <cmath>
#include <cstdlib>
#include <thread>

namespace vpi::intent
{

namespace
{
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
constexpr bool kHttpsSupported = true;
#else
constexpr bool kHttpsSupported = false;
#endif
}  // namespace

void EndpointConfig::validate() const
{
  if (url.empty()) {
    throw ConfigError("endpoint URL is not configured");
  }
  if (model.empty()) {
    throw ConfigError("model name is not configured");
  }
  parse_http_url(url);
  if (!path.starts_with("/")) {
    throw ConfigError("endpoint path must start with '/': " + path);
  }
  if (timeout.count() <= 0) {
    throw ConfigError("timeout must be positive");
  }
  if (max_retries < 0) {
    throw ConfigError("max_retries must be non-negative");
  }
  if (initial_backoff.count() < 0 || !(backoff_multiplier >= 1.0)) {
    throw ConfigError("backoff must be non-negative with a multiplier >= 1");
  }
  if (max_tokens <= 0 || !std::isfinite(temperature) || temperature < 0.0) {
    throw ConfigError("max_tokens must be positive and temperature non-negative");
  }
}

EndpointConfig with_env_api_key(EndpointConfig config)
{
  if (config.api_key.empty()) {
    if (const char * key = std::getenv(kApiKeyEnv)) {
      config.api_key = key;
    }
  }
  return config;
}

ParsedUrl parse_http_url(const std::string & url)
{
  ParsedUrl out;
  std::string rest;
  if (url.starts_with("http://")) {
    out.scheme = "http";
    out.port = 80;
    rest = url.substr(7);
  } else if (url.starts_with("https://")) {
    if (!kHttpsSupported) {
      throw ConfigError("this build has no TLS support; use an http endpoint: " + url);
    }
    out.scheme = "https";
    out.port = 443;
    rest = url.substr(8);
  } else {
    throw ConfigError("endpoint URL must start with http:// or https://: " + url);
  }
  if (const auto slash = rest.find('/'); slash != std::string::npos) {
    out.path = rest.substr(slash);
    rest.resize(slash);
  }
  if (const auto colon = rest.rfind(':'); colon != std::string::npos) {
    const auto port_text = rest.substr(colon + 1);
    char * end = nullptr;
    const long port = std::strtol(port_text.c_str(), &end, 10);
    if (port_text.empty() || *end != '\0' || port <= 0 || port > 65535) {
      throw ConfigError("invalid port in endpoint URL: " + url);
    }
    out.port = static_cast<int>(port);
    rest.resize(colon);
  }
  if (rest.empty()) {
    throw ConfigError("endpoint URL has no host: " + url);
  }
  out.host = rest;
  return out;
}

nlohmann::json build_request_body(
  const EndpointConfig & config, std::span<const ChatMessage> messages)
{
  return {
    {"model", config.model},
    {"messages", messages_to_json(messages)},
    {"max_tokens", config.max_tokens},
    {"temperature", config.temperature},
  };
}

std::optional<std::string> extract_completion_text(const std::string & body)
{
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return std::nullopt;
  }
  const auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) {
    return std::nullopt;
  }
  const auto & first = (*choices)[0];
  if (!first.is_object() || !first.contains("message") || !first["message"].is_object()) {
    return std::nullopt;
  }
  const auto & message = first["message"];
  if (!message.contains("content") || !message["content"].is_string()) {
    return std::nullopt;
  }
  return message["content"].get<std::string>();
}

namespace
{

bool is_transient_status(int status)
{
  return status == 408 || status == 429 || status >= 500;
}

}  // namespace

IntentDecision llm_classify(
  const std::string & visual_description, const std::string & kinematic_json,
  std::span<const Exemplar> exemplars, const EndpointConfig & config)
{
  config.validate();
  std::vector<ChatMessage> messages;
  try {
    messages = build_prompt(visual_description, kinematic_json, exemplars);
  } catch (const PromptBudgetExceeded & e) {
    return make_fallback(BackendTag::Llm, FallbackReason::PromptBudget, e.what());
  }
  const std::string body = build_request_body(config, messages).dump();
  const auto url = parse_http_url(config.url);
  const std::string path = url.path.empty() || url.path == "/" ? config.path : url.path;

  httplib::Headers headers;
  if (!config.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config.api_key);
  }

  auto backoff = config.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0 && backoff.count() > 0) {
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(
        static_cast<std::int64_t>(static_cast<double>(backoff.count()) * config.backoff_multiplier));
    }
    httplib::Client client(fmt::format("{}://{}:{}", url.scheme, url.host, url.port));
    client.set_connection_timeout(config.timeout);
    client.set_read_timeout(config.timeout);
    client.set_write_timeout(config.timeout);
    const auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = fmt::format("attempt {}: {}", attempt + 1, httplib::to_string(res.error()));
      continue;
    }
    if (res->status >= 200 && res->status < 300) {
      const auto text = extract_completion_text(res->body);
      if (!text) {
        return make_fallback(
          BackendTag::Llm, FallbackReason::InvalidOutput, "response lacks choices[0].message.content");
      }
      return parse_response(*text, BackendTag::Llm);
    }
    last_error = fmt::format("attempt {}: HTTP {}", attempt + 1, res->status);
    if (!is_transient_status(res->status)) {
      break;
    }
  }
  return make_fallback(BackendTag::Llm, FallbackReason::Transport, last_error);
}

LlmBackend::LlmBackend(EndpointConfig config, std::vector<Exemplar> exemplars)
: config_(std::move(config)), exemplars_(canonical_exemplar_order(exemplars))
{
  config_.validate();
}

IntentDecision LlmBackend::classify(const InferenceContext & context) const
{
  if (context.buffer == nullptr || context.buffer->empty()) {
    throw std::invalid_argument("llm backend requires a non-empty trajectory buffer");
  }
  return llm_classify(
    context.scene_description, perception::export_kinematic_json(context.buffer->samples()),
    exemplars_, config_);
}

}  // namespace vpi::intent
