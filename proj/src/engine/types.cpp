#include "playbench/engine/types.hpp"

#include <array>
#include <set>

#include "playbench/errors.hpp"

namespace playbench {

namespace {

template <typename E, size_t N>
E parse_enum(std::string_view s, const std::array<std::pair<E, std::string_view>, N>& table,
             const char* what) {
  for (const auto& [value, name] : table)
    if (name == s) return value;
  throw Error(std::string("unknown ") + what + ": " + std::string(s));
}

template <typename E, size_t N>
std::string_view enum_name(E e, const std::array<std::pair<E, std::string_view>, N>& table) {
  for (const auto& [value, name] : table)
    if (value == e) return name;
  return "?";
}

constexpr std::array<std::pair<Role, std::string_view>, 4> kRoles{{
    {Role::kGameMaster, "game_master"},
    {Role::kPlayerA, "player_a"},
    {Role::kPlayerB, "player_b"},
    {Role::kPlayerC, "player_c"},
}};

constexpr std::array<std::pair<Flow, std::string_view>, 6> kFlows{{
    {Flow::kTaboo, "taboo"},
    {Flow::kWordle, "wordle"},
    {Flow::kWordleClue, "wordle_clue"},
    {Flow::kWordleCritic, "wordle_critic"},
    {Flow::kReference, "reference"},
    {Flow::kDrawing, "drawing"},
}};

constexpr std::array<std::pair<Outcome, std::string_view>, 3> kOutcomes{{
    {Outcome::kSuccess, "Success"},
    {Outcome::kLoss, "Loss"},
    {Outcome::kAborted, "Aborted"},
}};

constexpr std::array<std::pair<AbortCause, std::string_view>, 4> kCauses{{
    {AbortCause::kNone, "none"},
    {AbortCause::kFormatViolation, "format_violation"},
    {AbortCause::kBackend, "backend"},
    {AbortCause::kHumanTimeout, "human_timeout"},
}};

constexpr std::array<std::pair<EventKind, std::string_view>, 6> kKinds{{
    {EventKind::kSendPrompt, "send_prompt"},
    {EventKind::kReceiveResponse, "receive_response"},
    {EventKind::kParseOk, "parse_ok"},
    {EventKind::kFormatViolation, "format_violation"},
    {EventKind::kRuleViolation, "rule_violation"},
    {EventKind::kTerminal, "terminal"},
}};

}  // namespace

std::string_view to_string(Role role) { return enum_name(role, kRoles); }
std::string_view to_string(Flow flow) { return enum_name(flow, kFlows); }
std::string_view to_string(Outcome outcome) { return enum_name(outcome, kOutcomes); }
std::string_view to_string(AbortCause cause) { return enum_name(cause, kCauses); }
std::string_view to_string(EventKind kind) { return enum_name(kind, kKinds); }

Role parse_role(std::string_view s) { return parse_enum(s, kRoles, "role"); }
Flow parse_flow(std::string_view s) { return parse_enum(s, kFlows, "flow"); }
Outcome parse_outcome(std::string_view s) { return parse_enum(s, kOutcomes, "outcome"); }
AbortCause parse_abort_cause(std::string_view s) {
  return parse_enum(s, kCauses, "abort cause");
}
EventKind parse_event_kind(std::string_view s) { return parse_enum(s, kKinds, "event kind"); }

const char* to_string(BackendErrorKind kind) {
  switch (kind) {
    case BackendErrorKind::kAuth: return "auth";
    case BackendErrorKind::kRateLimitExhausted: return "rate_limit_exhausted";
    case BackendErrorKind::kTimeout: return "timeout";
    case BackendErrorKind::kMalformedReply: return "malformed_reply";
    case BackendErrorKind::kServerError: return "server_error";
    case BackendErrorKind::kHttpError: return "http_error";
    case BackendErrorKind::kScriptExhausted: return "script_exhausted";
    case BackendErrorKind::kHumanTimeout: return "human_timeout";
  }
  return "unknown";
}

const std::string& LocalePack::keyword(std::string_view name) const {
  auto it = keywords.find(std::string(name));
  if (it == keywords.end())
    throw InvalidGameSpec("locale pack '" + language + "' has no keyword '" +
                          std::string(name) + "'");
  return it->second;
}

bool GameSpec::has_language(std::string_view language) const {
  return locale_packs.count(std::string(language)) > 0;
}

const LocalePack& GameSpec::pack_for(std::string_view language) const {
  auto it = locale_packs.find(std::string(language));
  if (it != locale_packs.end()) return it->second;
  it = locale_packs.find("en");
  if (it == locale_packs.end())
    throw InvalidGameSpec("game '" + game_name + "' has no English locale pack");
  return it->second;
}

std::string pairing_id(const std::map<Role, std::string>& models) {
  std::set<std::string> distinct;
  for (const auto& [role, id] : models) distinct.insert(id);
  if (distinct.size() == 1) return *distinct.begin();
  std::string out;
  for (const auto& [role, id] : models) {
    if (!out.empty()) out += "--";
    out += id;
  }
  return out;
}

}  // namespace playbench
