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
#include "vpi/intent/exemplar.hpp"
#include "vpi/perception/kinematic_json.hpp"

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <functional>
#include <thread>

namespace vpi::intent
{
namespace
{

// Local mock of a chat-completions endpoint.
class MockServer
{
public:
  using Handler = std::function<void(const httplib::Request &, httplib::Response &)>;

  explicit MockServer(Handler handler)
  {
    server_.Post("/v1/chat/completions", [this, handler](const auto & req, auto & res) {
      ++hits_;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      handler(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockServer()
  {
    server_.stop();
    thread_.join();
  }
  MockServer(const MockServer &) = delete;
  MockServer & operator=(const MockServer &) = delete;

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int hits() const { return hits_.load(); }
  const std::string & last_body() const { return last_body_; }
  const std::string & last_auth() const { return last_auth_; }

private:
  httplib::Server server_;
  int port_{0};
  std::thread thread_;
  std::atomic<int> hits_{0};
  std::string last_body_;
  std::string last_auth_;
};

std::string completion(const std::string & content)
{
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
    .dump();
}

EndpointConfig config_for(const MockServer & m)
{
  EndpointConfig c;
  c.url = m.url();
  c.model = "test-model";
  c.initial_backoff = std::chrono::milliseconds(0);
  c.timeout = std::chrono::milliseconds(2000);
  return c;
}

std::vector<Exemplar> exemplars() { return load_exemplar_dir(VPI_DATA_DIR "/exemplars"); }

std::string kin_json()
{
  return perception::export_kinematic_json(exemplars().front().kinematic_log);
}

const char * kReply =
  "VISUAL_ANALYSIS: A senior pedestrian with a walking frame.\n"
  "KINEMATIC_ANALYSIS: Lateral speed 1.1 m/s toward the lane.\n"
  "DECISION: Non-Yielding\n"
  "REASON: Continues into the crosswalk.\n"
  "DEMOGRAPHIC: senior\n";

TEST(LlmClient, ParsesCannedReply)
{
  MockServer m([](const auto &, auto & res) { res.set_content(completion(kReply), "application/json"); });
  auto cfg = config_for(m);
  cfg.api_key = "secret";
  const auto d = llm_classify("scene", kin_json(), exemplars(), cfg);
  EXPECT_FALSE(d.fallback_used);
  EXPECT_EQ(d.intent, core::IntentClass::NonYielding);
  EXPECT_EQ(d.demographic, core::Demographic::Senior);
  EXPECT_EQ(d.backend, BackendTag::Llm);
  EXPECT_EQ(m.hits(), 1);
  EXPECT_EQ(m.last_auth(), "Bearer secret");
}

TEST(LlmClient, RequestCarriesSixExemplarsAndTheQuery)
{
  MockServer m([](const auto &, auto & res) { res.set_content(completion(kReply), "application/json"); });
  llm_classify("scene", kin_json(), exemplars(), config_for(m));
  const auto body = nlohmann::json::parse(m.last_body());
  EXPECT_EQ(body.at("model"), "test-model");
  const auto & msgs = body.at("messages");
  ASSERT_EQ(msgs.size(), 14u);
  int markers = 0;
  for (const auto & msg : msgs) {
    markers += msg.at("content").get<std::string>().starts_with(kExemplarMarker) ? 1 : 0;
  }
  EXPECT_EQ(markers, 6);
  EXPECT_TRUE(msgs.back().at("content").get<std::string>().starts_with(kQueryMarker));
}

TEST(LlmClient, ServerErrorsAreRetriedThenFallBack)
{
  MockServer m([](const auto &, auto & res) { res.status = 500; });
  const auto d = llm_classify("scene", kin_json(), exemplars(), config_for(m));
  EXPECT_TRUE(d.fallback_used);
  EXPECT_EQ(d.fallback_reason, FallbackReason::Transport);
  EXPECT_EQ(d.intent, core::IntentClass::NonYielding);
  EXPECT_EQ(d.demographic, core::Demographic::Child);
  EXPECT_EQ(m.hits(), 3);
}

TEST(LlmClient, TransientThenSuccess)
{
  std::atomic<int> n{0};
  MockServer m([&n](const auto &, auto & res) {
    if (n++ == 0) {
      res.status = 429;
      return;
    }
    res.set_content(completion(kReply), "application/json");
  });
  const auto d = llm_classify("scene", kin_json(), exemplars(), config_for(m));
  EXPECT_FALSE(d.fallback_used);
  EXPECT_EQ(m.hits(), 2);
}

TEST(LlmClient, ClientErrorsAreNotRetried)
{
  MockServer m([](const auto &, auto & res) { res.status = 401; });
  const auto d = llm_classify("scene", kin_json(), exemplars(), config_for(m));
  EXPECT_TRUE(d.fallback_used);
  EXPECT_EQ(d.fallback_reason, FallbackReason::Transport);
  EXPECT_EQ(m.hits(), 1);
}

TEST(LlmClient, MalformedBodyIsInvalidOutput)
{
  MockServer m([](const auto &, auto & res) { res.set_content("{not json", "application/json"); });
  const auto d = llm_classify("scene", kin_json(), exemplars(), config_for(m));
  EXPECT_TRUE(d.fallback_used);
  EXPECT_EQ(d.fallback_reason, FallbackReason::InvalidOutput);
}

TEST(LlmClient, UnparseableContentIsInvalidOutput)
{
  MockServer m([](const auto &, auto & res) {
    res.set_content(completion("I cannot tell."), "application/json");
  });
  const auto d = llm_classify("scene", kin_json(), exemplars(), config_for(m));
  EXPECT_EQ(d.fallback_reason, FallbackReason::InvalidOutput);
}

TEST(LlmClient, UnreachableHostFallsBack)
{
  EndpointConfig c;
  c.url = "http://127.0.0.1:1";
  c.model = "m";
  c.max_retries = 0;
  c.timeout = std::chrono::milliseconds(500);
  const auto d = llm_classify("scene", kin_json(), exemplars(), c);
  EXPECT_EQ(d.fallback_reason, FallbackReason::Transport);
}

TEST(LlmClient, OversizedPromptFallsBackWithoutRequest)
{
  MockServer m([](const auto &, auto & res) { res.set_content(completion(kReply), "application/json"); });
  const std::string huge(60000, 'x');
  const auto d = llm_classify(huge, kin_json(), exemplars(), config_for(m));
  EXPECT_EQ(d.fallback_reason, FallbackReason::PromptBudget);
  EXPECT_EQ(m.hits(), 0);
}

TEST(EndpointConfig, Validation)
{
  EndpointConfig c;
  EXPECT_THROW(c.validate(), ConfigError);
  c.url = "http://localhost:8000";
  EXPECT_THROW(c.validate(), ConfigError);
  c.model = "m";
  EXPECT_NO_THROW(c.validate());
  c.url = "ftp://localhost";
  EXPECT_THROW(c.validate(), ConfigError);
  c.url = "http://localhost:99999";
  EXPECT_THROW(c.validate(), ConfigError);
  c.url = "http://:80";
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(LlmBackend(EndpointConfig{}, exemplars()), ConfigError);
}

TEST(EndpointConfig, UrlParsing)
{
  const auto u = parse_http_url("http://example.org:8080/v1/x");
  EXPECT_EQ(u.scheme, "http");
  EXPECT_EQ(u.host, "example.org");
  EXPECT_EQ(u.port, 8080);
  EXPECT_EQ(u.path, "/v1/x");
  EXPECT_EQ(parse_http_url("http://h").port, 80);
}

TEST(EndpointConfig, CompletionExtraction)
{
  EXPECT_EQ(extract_completion_text(completion("hi")), "hi");
  EXPECT_EQ(extract_completion_text("{}"), std::nullopt);
  EXPECT_EQ(extract_completion_text(R"({"choices": []})"), std::nullopt);
  EXPECT_EQ(extract_completion_text(R"({"choices": [{"message": {"content": 3}}]})"), std::nullopt);
}

}  // namespace
}  // namespace vpi::intent
