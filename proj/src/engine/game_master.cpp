#include "playbench/engine/game_master.hpp"

#include <chrono>
#include <ctime>

#include "playbench/errors.hpp"
#include "playbench/games/flows.hpp"

namespace playbench {

Clock system_clock() {
  return [] {
    const auto now = std::chrono::system_clock::now();
    const std::time_t secs = std::chrono::system_clock::to_time_t(now);
    const auto millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() %
        1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(millis));
    return std::string(out);
  };
}

Clock fixed_clock() {
  return [] { return std::string("1970-01-01T00:00:00.000Z"); };
}

Episode::Episode(const GameSpec& spec, const GameInstance& instance, const LocalePack& pack,
                 const PlayerMap& players, int max_turns)
    : spec_(spec), instance_(instance), pack_(pack), players_(players), max_turns_(max_turns) {}

namespace {

const std::string& role_template(const std::map<Role, std::string>& templates, Role role,
                                 const LocalePack& pack, const char* kind) {
  auto it = templates.find(role);
  if (it == templates.end())
    throw InvalidGameSpec("locale pack '" + pack.language + "' has no " + kind +
                          " prompt for " + std::string(to_string(role)));
  return it->second;
}

}  // namespace

std::string Episode::initial_prompt(Role role, const TemplateParams& params) const {
  return instantiate_prompt(role_template(pack_.initial_prompts, role, pack_, "initial"), params);
}

std::string Episode::turn_prompt(Role role, const TemplateParams& params) const {
  return instantiate_prompt(role_template(pack_.turn_prompts, role, pack_, "turn"), params);
}

std::string Episode::extra_prompt(const std::string& name, const TemplateParams& params) const {
  auto it = pack_.extra_prompts.find(name);
  if (it == pack_.extra_prompts.end())
    throw InvalidGameSpec("locale pack '" + pack_.language + "' has no '" + name + "' prompt");
  return instantiate_prompt(it->second, params);
}

void Episode::record(int turn, Role actor, EventKind kind, json content) {
  Event e;
  e.turn = turn;
  e.seq = static_cast<int>(events_.size());
  e.actor = actor;
  e.kind = kind;
  e.content = std::move(content);
  events_.push_back(std::move(e));
  if (observer_) observer_(events_.back());
}

void Episode::abort(int turn, AbortCause cause, const std::string& reason) {
  finished_ = true;
  outcome_ = Outcome::kAborted;
  abort_cause_ = cause;
  record(turn, Role::kGameMaster, EventKind::kTerminal,
         json{{"outcome", to_string(Outcome::kAborted)},
              {"abort_cause", to_string(cause)},
              {"reason", reason}});
}

std::optional<Exchange> Episode::exchange(Role role, int turn, const std::string& prompt,
                                          const ResponseParser& parse) {
  if (finished_) return std::nullopt;
  auto player_it = players_.find(role);
  if (player_it == players_.end() || player_it->second == nullptr)
    throw PlanError("no player assigned to " + std::string(to_string(role)));
  Player& player = *player_it->second;

  auto& history = histories_[role];
  history.push_back({MessageRole::kUser, prompt});
  record(turn, Role::kGameMaster, EventKind::kSendPrompt,
         json{{"to", to_string(role)}, {"text", prompt}});

  std::string reply;
  try {
    reply = player.respond(history);
  } catch (const BackendError& e) {
    const AbortCause cause = e.kind() == BackendErrorKind::kHumanTimeout
                                 ? AbortCause::kHumanTimeout
                                 : AbortCause::kBackend;
    abort(turn, cause, e.what());
    return std::nullopt;
  }
  history.push_back({MessageRole::kAssistant, reply});
  record(turn, role, EventKind::kReceiveResponse, reply);

  ParseResult parsed = parse(reply);
  if (!parsed.ok()) {
    record(turn, Role::kGameMaster, EventKind::kFormatViolation,
           json{{"role", to_string(role)}, {"reason", parsed.reason}});
    abort(turn, AbortCause::kFormatViolation, parsed.reason);
    return std::nullopt;
  }
  record(turn, Role::kGameMaster, EventKind::kParseOk, parsed.payload);
  return Exchange{std::move(reply), std::move(parsed.payload)};
}

void Episode::rule_violation(Role role, int turn, const std::string& reason) {
  record(turn, Role::kGameMaster, EventKind::kRuleViolation,
         json{{"role", to_string(role)}, {"reason", reason}});
}

void Episode::finish(Outcome outcome, int turn, json detail) {
  if (finished_) return;
  finished_ = true;
  outcome_ = outcome;
  json content{{"outcome", to_string(outcome)}, {"abort_cause", to_string(AbortCause::kNone)}};
  for (auto& [key, value] : detail.items()) content[key] = value;
  record(turn, Role::kGameMaster, EventKind::kTerminal, std::move(content));
}

Transcript play_episode(const GameSpec& spec, const GameInstance& instance,
                        const PlayerMap& players, std::string_view language, uint64_t seed,
                        const EpisodeOptions& options) {
  if (instance.game_name != spec.game_name)
    throw InvalidInstance("instance of '" + instance.game_name + "' given to game '" +
                          spec.game_name + "'");
  const int max_turns = games::check_instance(spec.flow, instance.params, spec.max_turns);
  for (Role role : games::flow_roles(spec.flow))
    if (!players.count(role) || players.at(role) == nullptr)
      throw PlanError("game '" + spec.game_name + "' needs a player for " +
                      std::string(to_string(role)));

  const LocalePack& pack = spec.pack_for(language);

  Transcript t;
  t.meta.game = spec.game_name;
  t.meta.experiment = instance.experiment_name;
  t.meta.instance_id = instance.instance_id;
  for (Role role : games::flow_roles(spec.flow)) t.meta.models[role] = players.at(role)->model_id();
  t.meta.language = pack.language;
  t.meta.seed = seed;
  t.meta.instance = instance.params;
  t.meta.started_at = options.clock();

  Episode episode(spec, instance, pack, players, max_turns);
  episode.set_observer(options.on_event);
  games::play_flow(episode);
  if (!episode.finished())
    throw Error("game flow for '" + spec.game_name + "' returned without a terminal state");

  t.meta.finished_at = options.clock();
  t.events = std::move(episode.events());
  t.outcome = episode.outcome();
  t.abort_cause = episode.abort_cause();
  return t;
}

ParseResult validate_response(const GameSpec& spec, Role role, [[maybe_unused]] int turn,
                              std::string_view language, std::string_view text) {
  return games::parser_for(spec.flow, role, spec.pack_for(language))(text);
}

}  // namespace playbench
