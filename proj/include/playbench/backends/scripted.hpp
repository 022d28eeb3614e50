#pragma once

#include <optional>
#include <string>
#include <vector>

#include "playbench/backends/player.hpp"
#include "playbench/engine/types.hpp"
#include "playbench/random.hpp"

namespace playbench {

// What a bot knows about its seat in an episode.
struct PlayerSetup {
  Role role = Role::kPlayerA;
  Flow flow = Flow::kTaboo;
  const LocalePack* pack = nullptr;  // pack the episode is played in
  uint64_t seed = 0;
  json instance_params;  // only information the role is told in its prompt may be used
  std::optional<std::vector<std::string>> word_pool;
};

// Replays a fixed list of replies, one per call.
class ScriptedPlayer : public Player {
 public:
  ScriptedPlayer(std::string model_id, std::vector<std::string> script);
  std::string model_id() const override { return model_id_; }
  // Throws BackendError(script_exhausted) past the end of the script.
  std::string respond(std::span<const Message> history) override;

 private:
  std::string model_id_;
  std::vector<std::string> script_;
  size_t next_ = 0;
};

// Plays every role of every built-in game without mistakes. Guessing and
// matching roles work only from their prompts; describing roles read the
// instance they are shown. The wordle guesser searches the word pool, or
// knows the target when no pool is configured.
class PerfectPlayer : public Player {
 public:
  PerfectPlayer(std::string model_id, PlayerSetup setup);
  std::string model_id() const override { return model_id_; }
  std::string respond(std::span<const Message> history) override;

 private:
  std::string model_id_;
  PlayerSetup setup_;
};

// Reference game baseline: player B picks an image uniformly at random.
class RandomReferencePlayer : public Player {
 public:
  RandomReferencePlayer(std::string model_id, const PlayerSetup& setup);
  std::string model_id() const override { return model_id_; }
  std::string respond(std::span<const Message> history) override;

 private:
  std::string model_id_;
  const LocalePack* pack_;
  Role role_;
  Rng rng_;
};

// Hyphen-spelled word ("p-l-a-n-e") and its inverse; used by the perfect
// describer so the clue never contains the target or its related words.
std::string spell_out(std::string_view word);
std::optional<std::string> unspell(std::string_view token);

}  // namespace playbench
