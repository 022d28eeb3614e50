#include "playbench/backends/player.hpp"

namespace playbench {

std::string_view to_string(MessageRole role) {
  switch (role) {
    case MessageRole::kSystem: return "system";
    case MessageRole::kUser: return "user";
    case MessageRole::kAssistant: return "assistant";
  }
  return "user";
}

}  // namespace playbench
