#include "playbench/interface/session.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "playbench/engine/runner.hpp"
#include "playbench/games/flows.hpp"
#include "playbench/games/quality.hpp"
#include "playbench/random.hpp"

namespace playbench {

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::kAwaitingHuman: return "awaiting_human";
    case SessionStatus::kAwaitingEngine: return "awaiting_engine";
    case SessionStatus::kFinished: return "finished";
  }
  return "?";
}

json to_json(const SessionSnapshot& s) {
  json events = json::array();
  for (const auto& e : s.transcript_so_far) events.push_back(to_json(e));
  json j{{"session_id", s.session_id},
         {"game", s.game},
         {"instance_id", s.instance_id},
         {"language", s.language},
         {"human_role", to_string(s.human_role)},
         {"status", to_string(s.status)},
         {"transcript_so_far", events}};
  j["pending_prompt"] = s.pending_prompt ? json(*s.pending_prompt) : json(nullptr);
  j["outcome"] = s.outcome ? json(to_string(*s.outcome)) : json(nullptr);
  j["abort_cause"] = to_string(s.abort_cause);
  j["quality"] = s.quality ? json(*s.quality) : json(nullptr);
  if (s.error) j["error"] = *s.error;
  return j;
}

struct SessionManager::Session {
  std::string id;
  std::string language;
  Role human_role = Role::kPlayerA;
  const GameSpec* spec = nullptr;
  GameInstance instance;
  std::shared_ptr<HumanMailbox> mailbox = std::make_shared<HumanMailbox>();
  std::vector<std::unique_ptr<Player>> players;

  mutable std::mutex mutex;
  std::vector<Event> events;
  bool finished = false;
  std::optional<Outcome> outcome;
  AbortCause abort_cause = AbortCause::kNone;
  std::optional<double> quality;
  std::optional<std::string> error;

  std::jthread thread;  // last member: joined before the rest is destroyed
};

namespace {

std::string new_session_id() {
  static std::mutex mutex;
  static std::random_device device;
  std::lock_guard lock(mutex);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%08x%08x%08x%08x", device(), device(), device(), device());
  return buf;
}

}  // namespace

SessionManager::SessionManager(SessionConfig config, games::GameCatalog catalog, ModelRegistry registry)
    : config_(std::move(config)), catalog_(std::move(catalog)), registry_(std::move(registry)) {}

SessionManager::~SessionManager() {
  std::lock_guard lock(mutex_);
  for (auto& [id, session] : sessions_) session->mailbox->close();
  sessions_.clear();
}

SessionSnapshot SessionManager::create(const std::string& game, int64_t instance_id,
                                       Role human_role, const std::string& language) {
  const GameSpec& spec = catalog_.find(game);
  const auto roles = games::flow_roles(spec.flow);
  if (std::find(roles.begin(), roles.end(), human_role) == roles.end())
    throw PlanError("game '" + game + "' has no seat " + std::string(to_string(human_role)));

  const GameInstance* instance = nullptr;
  for (const auto& file : config_.instance_files)
    if (file.game == game)
      for (const auto& inst : file.instances)
        if (inst.instance_id == instance_id) instance = &inst;
  if (!instance) throw InvalidInstance("no instance '" + std::to_string(instance_id) + "' for game '" + game + "'");

  auto s = std::make_shared<Session>();
  s->id = new_session_id();
  s->language = spec.has_language(language) ? language : "en";
  s->human_role = human_role;
  s->spec = &spec;
  s->instance = *instance;

  const uint64_t seed = episode_seed(config_.seed, game, instance->experiment_name, instance_id);
  const LocalePack& pack = spec.pack_for(s->language);
  const ModelSpec& partner = registry_.resolve(config_.partner_model);
  BackendContext context = config_.backend;
  context.human_mailbox = s->mailbox;
  context.human_timeout = config_.human_timeout;

  auto players = std::make_shared<PlayerMap>();
  for (Role role : roles) {
    if (role == human_role) {
      s->players.push_back(std::make_unique<HumanPlayer>(config_.human_model_id, s->mailbox, config_.human_timeout));
    } else {
      PlayerSetup setup;
      setup.role = role;
      setup.flow = spec.flow;
      setup.pack = &pack;
      setup.seed = role_seed(seed, to_string(role));
      setup.instance_params = instance->params;
      setup.word_pool = config_.word_pool;
      s->players.push_back(make_player(partner, setup, context));
    }
    (*players)[role] = s->players.back().get();
  }

  Session* raw = s.get();
  s->thread = std::jthread([this, raw, players, seed] {
    EpisodeOptions options;
    options.clock = config_.clock;
    options.on_event = [raw](const Event& e) {
      std::lock_guard lock(raw->mutex);
      raw->events.push_back(e);
    };
    try {
      const Transcript t = play_episode(*raw->spec, raw->instance, *players, raw->language, seed, options);
      std::optional<double> quality;
      if (t.outcome != Outcome::kAborted) quality = games::episode_quality(raw->spec->flow, t);
      // Sessions cut short by shutdown leave no transcript behind.
      if (config_.results_dir && !raw->mailbox->closed()) {
        write_file_atomic(transcript_path(*config_.results_dir, t.meta.models, raw->instance),
                          dump_transcript(t));
      }
      std::lock_guard lock(raw->mutex);
      raw->outcome = t.outcome;
      raw->abort_cause = t.abort_cause;
      raw->quality = quality;
      raw->finished = true;
    } catch (const std::exception& e) {
      std::lock_guard lock(raw->mutex);
      raw->error = e.what();
      raw->finished = true;
    }
  });

  {
    std::lock_guard lock(mutex_);
    sessions_[s->id] = s;
  }
  settle(*s);
  return snapshot(*s);
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw UnknownSession("unknown session '" + session_id + "'");
  return it->second;
}

SessionSnapshot SessionManager::snapshot(const Session& s) const {
  SessionSnapshot out;
  out.session_id = s.id;
  out.game = s.spec->game_name;
  out.instance_id = s.instance.instance_id;
  out.language = s.language;
  out.human_role = s.human_role;
  const auto prompt = s.mailbox->pending_prompt();
  std::lock_guard lock(s.mutex);
  out.transcript_so_far = s.events;
  if (s.finished) {
    out.status = SessionStatus::kFinished;
    out.outcome = s.outcome;
    out.abort_cause = s.abort_cause;
    out.quality = s.quality;
    out.error = s.error;
  } else if (prompt) {
    out.status = SessionStatus::kAwaitingHuman;
    out.pending_prompt = prompt;
  }
  return out;
}

void SessionManager::settle(const Session& s) const {
  const auto deadline = std::chrono::steady_clock::now() + config_.settle_timeout;
  while (std::chrono::steady_clock::now() < deadline) {
    {
      std::lock_guard lock(s.mutex);
      if (s.finished) return;
    }
    if (s.mailbox->pending_prompt()) return;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
}

SessionSnapshot SessionManager::get(const std::string& session_id) const { return snapshot(*find(session_id)); }

SessionSnapshot SessionManager::submit(const std::string& session_id, const std::string& text) {
  auto s = find(session_id);
  {
    std::lock_guard lock(s->mutex);
    if (s->finished) throw SessionStateError("session is finished");
  }
  if (!s->mailbox->submit(text)) throw SessionStateError("session is not awaiting the human player");
  settle(*s);
  return snapshot(*s);
}

}  // namespace playbench
