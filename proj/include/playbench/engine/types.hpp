#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace playbench {

using json = nlohmann::json;

enum class Role { kGameMaster, kPlayerA, kPlayerB, kPlayerC };

enum class Flow { kTaboo, kWordle, kWordleClue, kWordleCritic, kReference, kDrawing };

enum class Outcome { kSuccess, kLoss, kAborted };

enum class AbortCause { kNone, kFormatViolation, kBackend, kHumanTimeout };

enum class EventKind {
  kSendPrompt,
  kReceiveResponse,
  kParseOk,
  kFormatViolation,
  kRuleViolation,
  kTerminal,
};

std::string_view to_string(Role role);
std::string_view to_string(Flow flow);
std::string_view to_string(Outcome outcome);
std::string_view to_string(AbortCause cause);
std::string_view to_string(EventKind kind);

Role parse_role(std::string_view s);
Flow parse_flow(std::string_view s);
Outcome parse_outcome(std::string_view s);
AbortCause parse_abort_cause(std::string_view s);
EventKind parse_event_kind(std::string_view s);

// Per-language bundle of prompt templates and parser keywords.
struct LocalePack {
  std::string language;
  std::map<Role, std::string> initial_prompts;
  std::map<Role, std::string> turn_prompts;
  // Flow-specific templates beyond initial/turn (e.g. the critic relay).
  std::map<std::string, std::string> extra_prompts;
  std::map<std::string, std::string> keywords;
  std::string filled_cell_char = "X";

  // Throws InvalidGameSpec when the keyword is absent.
  const std::string& keyword(std::string_view name) const;
};

struct GameSpec {
  std::string game_name;
  std::vector<Role> roles;
  int max_turns = 1;
  std::map<std::string, LocalePack> locale_packs;
  Flow flow = Flow::kReference;

  bool has_language(std::string_view language) const;
  // The pack for `language`, or the English pack when there is none.
  const LocalePack& pack_for(std::string_view language) const;
};

struct GameInstance {
  std::string game_name;
  std::string experiment_name;
  int64_t instance_id = 0;
  json params = json::object();
};

struct Event {
  int turn = 0;
  int seq = 0;
  Role actor = Role::kGameMaster;
  EventKind kind = EventKind::kSendPrompt;
  json content;
};

struct TranscriptMeta {
  std::string game;
  std::string experiment;
  int64_t instance_id = 0;
  std::map<Role, std::string> models;
  std::string language = "en";
  uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  // Instance parameters, kept so a transcript can be scored on its own.
  json instance = json::object();
};

struct Transcript {
  TranscriptMeta meta;
  std::vector<Event> events;
  Outcome outcome = Outcome::kAborted;
  AbortCause abort_cause = AbortCause::kNone;
};

struct ParseResult {
  enum class Status { kAccepted, kFormatViolation };

  Status status = Status::kFormatViolation;
  json payload;
  std::string reason;

  static ParseResult accepted(json payload) {
    return {Status::kAccepted, std::move(payload), {}};
  }
  static ParseResult violation(std::string reason) {
    return {Status::kFormatViolation, nullptr, std::move(reason)};
  }
  bool ok() const { return status == Status::kAccepted; }
};

// Pairing label used for leaderboards: a single id for self-play, else the
// role-ordered ids joined with "--".
std::string pairing_id(const std::map<Role, std::string>& models);

}  // namespace playbench
