#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "playbench/backends/human.hpp"
#include "playbench/backends/model_spec.hpp"
#include "playbench/backends/remote.hpp"
#include "playbench/backends/scripted.hpp"

namespace playbench {

// Resources shared by all players of a run.
struct BackendContext {
  ChatClientOptions chat;
  std::shared_ptr<HumanMailbox> human_mailbox;  // required for human seats
  std::chrono::milliseconds human_timeout = HumanPlayer::kDefaultTimeout;
};

// Builds the player for one seat of one episode. Throws PlanError when the
// spec cannot play that seat.
std::unique_ptr<Player> make_player(const ModelSpec& spec, const PlayerSetup& setup,
                                    const BackendContext& context = {});

// Five-letter words of a pool file, cached per path.
const std::vector<std::string>& wordle_pool_words(const std::string& path);

// One stateless generation step for remote and replay-script models: the
// reply to the last prompt of `history`.
std::string generate(const ModelSpec& spec, std::span<const Message> history);

}  // namespace playbench
