#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "playbench/backends/factory.hpp"
#include "playbench/engine/game_master.hpp"
#include "playbench/engine/serialization.hpp"
#include "playbench/errors.hpp"
#include "playbench/games/catalog.hpp"

namespace playbench {

enum class SessionStatus { kAwaitingHuman, kAwaitingEngine, kFinished };

std::string_view to_string(SessionStatus status);

struct SessionSnapshot {
  std::string session_id;
  std::string game;
  int64_t instance_id = 0;
  std::string language;
  Role human_role = Role::kPlayerA;
  SessionStatus status = SessionStatus::kAwaitingEngine;
  std::optional<std::string> pending_prompt;  // set iff awaiting_human
  std::vector<Event> transcript_so_far;
  std::optional<Outcome> outcome;
  AbortCause abort_cause = AbortCause::kNone;
  std::optional<double> quality;
  std::optional<std::string> error;  // engine failure outside the game rules
};

json to_json(const SessionSnapshot& s);

// Thrown for requests that do not fit the session's state (HTTP 409).
class SessionStateError : public Error {
 public:
  using Error::Error;
};

// Thrown for unknown session ids (HTTP 404).
class UnknownSession : public Error {
 public:
  using Error::Error;
};

struct SessionConfig {
  std::vector<InstanceFile> instance_files;
  std::string partner_model = "scripted:perfect";  // plays every non-human seat
  std::string human_model_id = "human";
  std::optional<std::filesystem::path> results_dir;  // finished transcripts are written here
  std::chrono::milliseconds human_timeout = HumanPlayer::kDefaultTimeout;
  // How long create/submit wait for the engine to reach the next human turn.
  std::chrono::milliseconds settle_timeout{10000};
  uint64_t seed = 42;
  Clock clock = system_clock();
  BackendContext backend;
  std::optional<std::vector<std::string>> word_pool;
};

// Live human-play sessions. Each session runs its episode on its own thread;
// the human seat is fed through a mailbox.
class SessionManager {
 public:
  SessionManager(SessionConfig config, games::GameCatalog catalog, ModelRegistry registry);
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  // Throws UnknownGame, InvalidInstance (unknown instance id), PlanError.
  SessionSnapshot create(const std::string& game, int64_t instance_id, Role human_role,
                         const std::string& language);
  SessionSnapshot get(const std::string& session_id) const;
  // Throws SessionStateError unless the session awaits the human.
  SessionSnapshot submit(const std::string& session_id, const std::string& text);

  const std::vector<InstanceFile>& instance_files() const { return config_.instance_files; }
  const games::GameCatalog& catalog() const { return catalog_; }
  const SessionConfig& config() const { return config_; }

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& session_id) const;
  SessionSnapshot snapshot(const Session& s) const;
  void settle(const Session& s) const;

  SessionConfig config_;
  games::GameCatalog catalog_;
  ModelRegistry registry_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace playbench
