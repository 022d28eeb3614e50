#include "playbench/backends/remote.hpp"

#include <cstdlib>
#include <map>
#include <regex>
#include <thread>

#include <httplib.h>

#include "playbench/errors.hpp"

namespace playbench {

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

RateLimiter::RateLimiter(double per_minute, Sleeper sleeper, TimeSource now)
    : per_minute_(per_minute),
      tokens_(per_minute),
      last_(now()),
      sleeper_(std::move(sleeper)),
      now_(std::move(now)) {}

void RateLimiter::acquire() {
  if (per_minute_ <= 0) return;
  std::lock_guard lock(mutex_);
  for (;;) {
    const auto t = now_();
    const double elapsed_min = std::chrono::duration<double, std::ratio<60>>(t - last_).count();
    tokens_ = std::min(per_minute_, tokens_ + elapsed_min * per_minute_);
    last_ = t;
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    const double wait_ms = (1.0 - tokens_) / per_minute_ * 60000.0;
    sleeper_(std::chrono::milliseconds(static_cast<long>(wait_ms) + 1));
  }
}

std::shared_ptr<RateLimiter> rate_limiter_for(const std::string& endpoint_url, double per_minute) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<RateLimiter>> limiters;
  std::lock_guard lock(mutex);
  auto& slot = limiters[endpoint_url];
  if (!slot) slot = std::make_shared<RateLimiter>(per_minute);
  return slot;
}

std::string extract_reply(const json& body, const std::string& path) {
  static const std::regex step(R"(([^.\[\]]+)|\[(\d+)\])");
  const json* node = &body;
  for (auto it = std::sregex_iterator(path.begin(), path.end(), step); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (m[1].matched) {
      if (!node->is_object() || !node->contains(m[1].str()))
        throw BackendError(BackendErrorKind::kMalformedReply, "reply has no '" + m[1].str() + "'");
      node = &(*node)[m[1].str()];
    } else {
      const size_t i = std::stoul(m[2].str());
      if (!node->is_array() || node->size() <= i)
        throw BackendError(BackendErrorKind::kMalformedReply, "reply has no element [" + m[2].str() + "]");
      node = &(*node)[i];
    }
  }
  if (!node->is_string()) throw BackendError(BackendErrorKind::kMalformedReply, "reply text is not a string");
  return node->get<std::string>();
}

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw Error("invalid endpoint url '" + url + "'");
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

std::optional<std::string> getenv_value(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

}  // namespace

ChatClient::ChatClient(ModelSpec spec, ChatClientOptions options)
    : spec_(std::move(spec)), options_(std::move(options)) {
  if (!options_.read_env) options_.read_env = getenv_value;
  limiter_ = rate_limiter_for(spec_.endpoint_url, spec_.requests_per_minute);
}

std::string ChatClient::generate(std::span<const Message> history) {
  const auto key = options_.read_env(spec_.auth_env_var);
  if (!key)
    throw BackendError(BackendErrorKind::kAuth,
                       "environment variable " + spec_.auth_env_var + " is not set");

  json messages = json::array();
  for (const auto& m : history) messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  const json request{{"model", spec_.remote_model.empty() ? spec_.model_id : spec_.remote_model},
                     {"messages", messages},
                     {"temperature", spec_.gen_params.temperature},
                     {"max_tokens", spec_.gen_params.max_response_tokens}};
  const std::string payload = request.dump();

  const Endpoint ep = split_url(spec_.endpoint_url);
  httplib::Client cli(ep.origin);
  const auto secs = options_.timeout.count();
  cli.set_connection_timeout(secs, 0);
  cli.set_read_timeout(secs, 0);
  cli.set_write_timeout(secs, 0);
  cli.set_bearer_token_auth(*key);

  BackendErrorKind last_kind = BackendErrorKind::kServerError;
  std::string last_cause;
  auto backoff = options_.base_backoff;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      options_.sleeper(backoff);
      backoff *= 2;
    }
    limiter_->acquire();
    auto res = cli.Post(ep.path, payload, "application/json");
    if (!res) {
      const auto err = res.error();
      last_kind = err == httplib::Error::Read || err == httplib::Error::Write ||
                          err == httplib::Error::ConnectionTimeout
                      ? BackendErrorKind::kTimeout
                      : BackendErrorKind::kServerError;
      last_cause = "request failed: " + httplib::to_string(err);
      continue;
    }
    const int status = res->status;
    if (status == 429) {
      last_kind = BackendErrorKind::kRateLimitExhausted;
      last_cause = "rate limited (429)";
      continue;
    }
    if (status >= 500) {
      last_kind = BackendErrorKind::kServerError;
      last_cause = "server error " + std::to_string(status);
      continue;
    }
    if (status == 401 || status == 403)
      throw BackendError(BackendErrorKind::kAuth, "endpoint rejected the key (" + std::to_string(status) + ")");
    if (status < 200 || status >= 300)
      throw BackendError(BackendErrorKind::kHttpError, "unexpected status " + std::to_string(status));
    json body;
    try {
      body = json::parse(res->body);
    } catch (const json::exception&) {
      throw BackendError(BackendErrorKind::kMalformedReply, "reply is not JSON");
    }
    return extract_reply(body, spec_.reply_path);
  }
  throw BackendError(last_kind, last_cause + " after " + std::to_string(options_.max_retries + 1) + " attempts");
}

RemotePlayer::RemotePlayer(ModelSpec spec, ChatClientOptions options)
    : client_(std::move(spec), std::move(options)) {}

}  // namespace playbench
