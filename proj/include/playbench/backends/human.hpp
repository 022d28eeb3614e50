#pragma once

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "playbench/backends/player.hpp"

namespace playbench {

// Single-slot handoff between an engine thread playing a human seat and
// whoever relays the human's replies (the HTTP service, a test).
class HumanMailbox {
 public:
  // Engine side: publishes the prompt and blocks for the reply. Throws
  // BackendError(human_timeout) when none arrives in time or the mailbox
  // is closed.
  std::string exchange(const std::string& prompt, std::chrono::milliseconds timeout);

  // Relay side. `submit` returns false when no prompt is pending.
  std::optional<std::string> pending_prompt() const;
  bool submit(std::string reply);
  void close();
  bool closed() const;

 private:
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::optional<std::string> prompt_;
  std::optional<std::string> reply_;
  bool closed_ = false;
};

class HumanPlayer : public Player {
 public:
  static constexpr std::chrono::minutes kDefaultTimeout{30};

  HumanPlayer(std::string model_id, std::shared_ptr<HumanMailbox> mailbox,
              std::chrono::milliseconds timeout = kDefaultTimeout);
  std::string model_id() const override { return model_id_; }
  std::string respond(std::span<const Message> history) override;

 private:
  std::string model_id_;
  std::shared_ptr<HumanMailbox> mailbox_;
  std::chrono::milliseconds timeout_;
};

}  // namespace playbench
