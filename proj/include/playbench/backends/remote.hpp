#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>

#include "playbench/backends/model_spec.hpp"
#include "playbench/backends/player.hpp"

namespace playbench {

using Sleeper = std::function<void(std::chrono::milliseconds)>;

Sleeper real_sleeper();

// Token bucket refilled at `per_minute` tokens per minute, capacity one
// minute's worth. `acquire` blocks until a token is available.
class RateLimiter {
 public:
  using TimeSource = std::function<std::chrono::steady_clock::time_point()>;

  explicit RateLimiter(double per_minute, Sleeper sleeper = real_sleeper(),
                       TimeSource now = std::chrono::steady_clock::now);
  void acquire();

 private:
  double per_minute_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
  Sleeper sleeper_;
  TimeSource now_;
  std::mutex mutex_;
};

// Process-wide limiter shared by every client of one endpoint.
std::shared_ptr<RateLimiter> rate_limiter_for(const std::string& endpoint_url, double per_minute);

struct ChatClientOptions {
  int max_retries = 3;
  std::chrono::milliseconds base_backoff{1000};  // doubled after every retry
  std::chrono::seconds timeout{120};
  Sleeper sleeper = real_sleeper();
  // Reads the API key; defaults to the process environment.
  std::function<std::optional<std::string>(const std::string&)> read_env;
};

// OpenAI-style chat completion client: POST {model, messages, temperature,
// max_tokens} with a bearer key. Retries 429, 5xx and transport failures.
class ChatClient {
 public:
  explicit ChatClient(ModelSpec spec, ChatClientOptions options = {});

  // Throws BackendError: auth (missing key, 401/403), rate_limit_exhausted,
  // timeout, server_error, http_error or malformed_reply.
  std::string generate(std::span<const Message> history);

  const ModelSpec& spec() const { return spec_; }

 private:
  ModelSpec spec_;
  ChatClientOptions options_;
  std::shared_ptr<RateLimiter> limiter_;
};

// Follows a path such as "choices[0].message.content" into a JSON reply.
// Throws BackendError(malformed_reply) when a step is missing.
std::string extract_reply(const json& body, const std::string& path);

class RemotePlayer : public Player {
 public:
  RemotePlayer(ModelSpec spec, ChatClientOptions options = {});
  std::string model_id() const override { return client_.spec().model_id; }
  std::string respond(std::span<const Message> history) override { return client_.generate(history); }

 private:
  ChatClient client_;
};

}  // namespace playbench
