#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "playbench/backends/factory.hpp"
#include "playbench/engine/game_master.hpp"
#include "playbench/engine/serialization.hpp"
#include "playbench/games/catalog.hpp"

namespace playbench {

// Model ids for one pairing: a single id plays every role, otherwise one id
// per role in role order (player_a, player_b, ...).
using Pairing = std::vector<std::string>;

// Parses "a+b" (or "a") into a pairing.
Pairing parse_pairing(std::string_view text);

struct RunPlan {
  std::vector<InstanceFile> instance_files;
  std::vector<std::string> games;  // empty: every game with instances
  std::vector<Pairing> pairings;
  std::string language = "en";
  std::filesystem::path results_dir = "results";
  uint64_t seed = 42;
  int jobs = 1;
  bool skip_existing = true;
  std::optional<std::vector<std::string>> word_pool;  // default pool for wordle bots
};

struct RunOptions {
  const games::GameCatalog* catalog = nullptr;  // builtin when null
  const ModelRegistry* registry = nullptr;      // builtin when null
  BackendContext backend;
  Clock clock = system_clock();
  // Called after every episode with (done, total); may run on worker threads.
  std::function<void(size_t, size_t)> progress;
};

struct EpisodeRecord {
  std::string pairing;
  std::string game;
  std::string experiment;
  int64_t instance_id = 0;
  std::filesystem::path transcript;  // relative to the results dir
  bool skipped = false;
  std::optional<Outcome> outcome;
  AbortCause abort_cause = AbortCause::kNone;
};

struct RunSummary {
  std::vector<EpisodeRecord> episodes;  // in plan order
  size_t played = 0;
  size_t skipped = 0;
  size_t success = 0;
  size_t loss = 0;
  size_t aborted = 0;
  size_t backend_failures = 0;
  std::filesystem::path manifest;
};

// Directory name of a pairing: model ids joined with "--", with characters
// that are unsafe in paths replaced.
std::string pairing_dir(const std::map<Role, std::string>& models);

std::filesystem::path transcript_path(const std::filesystem::path& results_dir,
                                      const std::map<Role, std::string>& models,
                                      const GameInstance& instance);

// Plays every (pairing, instance) of the plan and writes one transcript per
// episode plus `manifest.json`. Model ids and games are resolved before any
// episode starts (UnresolvableModel, UnknownGame, PlanError).
RunSummary run_benchmark(const RunPlan& plan, const RunOptions& options = {});

}  // namespace playbench
