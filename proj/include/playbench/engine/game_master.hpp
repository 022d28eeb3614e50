#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "playbench/backends/player.hpp"
#include "playbench/engine/template.hpp"
#include "playbench/engine/types.hpp"

namespace playbench {

// Non-owning role -> player assignment for one episode.
using PlayerMap = std::map<Role, Player*>;

using ResponseParser = std::function<ParseResult(std::string_view)>;

// Produces ISO-8601 UTC timestamps for transcript metadata.
using Clock = std::function<std::string()>;

Clock system_clock();
// Always returns the Unix epoch; makes transcripts byte-reproducible.
Clock fixed_clock();

struct Exchange {
  std::string raw;  // reply text as received
  json payload;     // parser output
};

// Turn-by-turn state of one episode. A game flow drives it; the episode
// records every prompt, reply and verdict as transcript events and owns the
// terminal decision once a format violation or backend failure occurs.
class Episode {
 public:
  Episode(const GameSpec& spec, const GameInstance& instance, const LocalePack& pack,
          const PlayerMap& players, int max_turns);

  const GameSpec& spec() const { return spec_; }
  const GameInstance& instance() const { return instance_; }
  const LocalePack& pack() const { return pack_; }
  int max_turns() const { return max_turns_; }

  std::string initial_prompt(Role role, const TemplateParams& params) const;
  std::string turn_prompt(Role role, const TemplateParams& params) const;
  std::string extra_prompt(const std::string& name, const TemplateParams& params) const;

  // Prompts `role` and validates the reply. Returns nullopt once the episode
  // is over: the reply broke the parsing rules or the backend failed.
  std::optional<Exchange> exchange(Role role, int turn, const std::string& prompt,
                                   const ResponseParser& parse);

  // A well-formed move that breaks a game rule; the flow still decides the
  // outcome (normally Loss).
  void rule_violation(Role role, int turn, const std::string& reason);

  void finish(Outcome outcome, int turn, json detail = json::object());

  bool finished() const { return finished_; }
  Outcome outcome() const { return outcome_; }
  AbortCause abort_cause() const { return abort_cause_; }
  std::vector<Event>& events() { return events_; }

  // Called with every event as it is recorded.
  void set_observer(std::function<void(const Event&)> observer) { observer_ = std::move(observer); }

 private:
  void record(int turn, Role actor, EventKind kind, json content);
  void abort(int turn, AbortCause cause, const std::string& reason);

  const GameSpec& spec_;
  const GameInstance& instance_;
  const LocalePack& pack_;
  const PlayerMap& players_;
  int max_turns_;
  std::map<Role, std::vector<Message>> histories_;
  std::vector<Event> events_;
  bool finished_ = false;
  Outcome outcome_ = Outcome::kAborted;
  AbortCause abort_cause_ = AbortCause::kNone;
  std::function<void(const Event&)> observer_;
};

struct EpisodeOptions {
  Clock clock = system_clock();
  std::function<void(const Event&)> on_event;
};

// Plays one episode to its terminal state. Falls back to the English pack
// when `language` has none (the transcript then records "en").
Transcript play_episode(const GameSpec& spec, const GameInstance& instance,
                        const PlayerMap& players, std::string_view language, uint64_t seed,
                        const EpisodeOptions& options = {});

// Parses one reply the way the game master would at that point of the game.
ParseResult validate_response(const GameSpec& spec, Role role, int turn,
                              std::string_view language, std::string_view text);

}  // namespace playbench
