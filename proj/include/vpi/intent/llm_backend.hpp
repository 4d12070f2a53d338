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

#ifndef VPI__INTENT__LLM_BACKEND_HPP_
#define VPI__INTENT__LLM_BACKEND_HPP_

#include "vpi/intent/decision.hpp"
#include "vpi/intent/exemplar.hpp"
#include "vpi/intent/prompt.hpp"

#include <json.hpp>

#include <chrono>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpi::intent
{

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Chat-completion endpoint settings. https needs a build with TLS support.
struct EndpointConfig
{
  std::string url;
  std::string path{"/v1/chat/completions"};
  std::string model;
  std::string api_key;
  std::chrono::milliseconds timeout{30000};
  int max_retries{2};
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier{2.0};
  int max_tokens{500};
  double temperature{0.0};

  /// Throws ConfigError for a missing URL or model, an unsupported scheme or bad numbers.
  void validate() const;
};

inline constexpr const char * kApiKeyEnv = "VPI_LLM_API_KEY";

/// Fills `api_key` from the environment when it is not already set.
EndpointConfig with_env_api_key(EndpointConfig config);

struct ParsedUrl
{
  std::string scheme;
  std::string host;
  int port{80};
  std::string path;
};

/// Splits `scheme://host[:port][/path]`. Throws ConfigError otherwise.
ParsedUrl parse_http_url(const std::string & url);

nlohmann::json build_request_body(
  const EndpointConfig & config, std::span<const ChatMessage> messages);

/// Extracts choices[0].message.content, or nullopt for any other shape.
std::optional<std::string> extract_completion_text(const std::string & body);

/// Builds the prompt, posts it, and parses the reply. Transient failures (connection errors,
/// 408, 429, 5xx) are retried `max_retries` times with exponential backoff; exhaustion and
/// other HTTP errors return a Transport fallback.
IntentDecision llm_classify(
  const std::string & visual_description, const std::string & kinematic_json,
  std::span<const Exemplar> exemplars, const EndpointConfig & config);

class LlmBackend : public IntentBackend
{
public:
  /// Validates the configuration and the exemplar set up front.
  LlmBackend(EndpointConfig config, std::vector<Exemplar> exemplars);

  IntentDecision classify(const InferenceContext & context) const override;
  BackendTag tag() const noexcept override { return BackendTag::Llm; }

private:
  EndpointConfig config_;
  std::vector<Exemplar> exemplars_;
};

}  // namespace vpi::intent

#endif  // VPI__INTENT__LLM_BACKEND_HPP_
