#pragma once

#include <span>
#include <string>
#include <string_view>

namespace playbench {

enum class MessageRole { kSystem, kUser, kAssistant };

std::string_view to_string(MessageRole role);

struct Message {
  MessageRole role = MessageRole::kUser;
  std::string content;

  bool operator==(const Message&) const = default;
};

// One realization of a game role: remote model, scripted bot or human.
// `respond` sees the role's conversation so far, ending with the newest
// prompt, and returns the reply text. Failures surface as BackendError.
class Player {
 public:
  virtual ~Player() = default;
  virtual std::string model_id() const = 0;
  virtual std::string respond(std::span<const Message> history) = 0;
};

}  // namespace playbench
