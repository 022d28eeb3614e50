#include "playbench/backends/human.hpp"

#include "playbench/errors.hpp"

namespace playbench {

std::string HumanMailbox::exchange(const std::string& prompt, std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  if (closed_) throw BackendError(BackendErrorKind::kHumanTimeout, "session closed");
  prompt_ = prompt;
  reply_.reset();
  cv_.notify_all();
  const bool answered = cv_.wait_for(lock, timeout, [&] { return reply_.has_value() || closed_; });
  prompt_.reset();
  if (!answered || !reply_) throw BackendError(BackendErrorKind::kHumanTimeout, "no reply from the human player");
  std::string out = std::move(*reply_);
  reply_.reset();
  return out;
}

std::optional<std::string> HumanMailbox::pending_prompt() const {
  std::lock_guard lock(mutex_);
  if (reply_) return std::nullopt;
  return prompt_;
}

bool HumanMailbox::submit(std::string reply) {
  std::lock_guard lock(mutex_);
  if (!prompt_ || reply_ || closed_) return false;
  reply_ = std::move(reply);
  cv_.notify_all();
  return true;
}

void HumanMailbox::close() {
  std::lock_guard lock(mutex_);
  closed_ = true;
  cv_.notify_all();
}

bool HumanMailbox::closed() const {
  std::lock_guard lock(mutex_);
  return closed_;
}

HumanPlayer::HumanPlayer(std::string model_id, std::shared_ptr<HumanMailbox> mailbox,
                         std::chrono::milliseconds timeout)
    : model_id_(std::move(model_id)), mailbox_(std::move(mailbox)), timeout_(timeout) {}

std::string HumanPlayer::respond(std::span<const Message> history) {
  if (history.empty()) throw BackendError(BackendErrorKind::kMalformedReply, "no prompt for the human player");
  return mailbox_->exchange(history.back().content, timeout_);
}

}  // namespace playbench
