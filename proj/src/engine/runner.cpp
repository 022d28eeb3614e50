#include "playbench/engine/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "playbench/errors.hpp"
#include "playbench/games/flows.hpp"
#include "playbench/random.hpp"
#include "playbench/text.hpp"

namespace playbench {

namespace fs = std::filesystem;

Pairing parse_pairing(std::string_view text) {
  Pairing out;
  size_t start = 0;
  for (;;) {
    const size_t plus = text.find('+', start);
    const auto part = text::trim(text.substr(start, plus == std::string_view::npos ? plus : plus - start));
    if (part.empty()) throw PlanError("empty model id in pairing '" + std::string(text) + "'");
    out.emplace_back(part);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

std::string pairing_dir(const std::map<Role, std::string>& models) {
  std::string out = pairing_id(models);
  for (char& c : out) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' || c == '+';
    if (!safe) c = '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

fs::path transcript_path(const fs::path& results_dir, const std::map<Role, std::string>& models,
                         const GameInstance& instance) {
  return results_dir / pairing_dir(models) / instance.game_name / instance.experiment_name /
         std::to_string(instance.instance_id) / "transcript.json";
}

namespace {

struct Task {
  const GameSpec* spec;
  const GameInstance* instance;
  std::map<Role, const ModelSpec*> models;
};

std::map<Role, const ModelSpec*> seat_models(const Pairing& pairing, const GameSpec& spec,
                                             const ModelRegistry& registry) {
  const auto roles = games::flow_roles(spec.flow);
  if (pairing.size() != 1 && pairing.size() != roles.size())
    throw PlanError("game '" + spec.game_name + "' has " + std::to_string(roles.size()) +
                    " roles but the pairing names " + std::to_string(pairing.size()) + " models");
  std::map<Role, const ModelSpec*> out;
  for (size_t i = 0; i < roles.size(); ++i)
    out[roles[i]] = &registry.resolve(pairing.size() == 1 ? pairing[0] : pairing[i]);
  return out;
}

std::string pairing_text(const Pairing& p) { return text::join(p, "+"); }

json record_json(const EpisodeRecord& r) {
  json j{{"pairing", r.pairing},
         {"game", r.game},
         {"experiment", r.experiment},
         {"instance_id", r.instance_id},
         {"transcript", r.transcript.generic_string()},
         {"skipped", r.skipped}};
  j["outcome"] = r.outcome ? json(to_string(*r.outcome)) : json(nullptr);
  j["abort_cause"] = to_string(r.abort_cause);
  return j;
}

}  // namespace

RunSummary run_benchmark(const RunPlan& plan, const RunOptions& options) {
  const games::GameCatalog builtin_catalog = options.catalog ? games::GameCatalog{} : games::GameCatalog::builtin();
  const ModelRegistry builtin_registry = options.registry ? ModelRegistry{} : ModelRegistry::builtin();
  const games::GameCatalog& catalog = options.catalog ? *options.catalog : builtin_catalog;
  const ModelRegistry& registry = options.registry ? *options.registry : builtin_registry;

  if (plan.pairings.empty()) throw PlanError("no models to run");
  if (plan.jobs < 1) throw PlanError("jobs must be at least 1");
  const std::set<std::string> wanted(plan.games.begin(), plan.games.end());
  for (const auto& g : wanted) catalog.find(g);

  // Resolve everything up front so a typo fails before any episode runs.
  std::vector<Task> tasks;
  for (const auto& pairing : plan.pairings) {
    for (const auto& file : plan.instance_files) {
      if (!wanted.empty() && !wanted.count(file.game)) continue;
      const GameSpec& spec = catalog.find(file.game);
      const auto models = seat_models(pairing, spec, registry);
      for (const auto& inst : file.instances) tasks.push_back({&spec, &inst, models});
    }
  }
  for (const auto& g : wanted) {
    const bool has = std::any_of(plan.instance_files.begin(), plan.instance_files.end(),
                                 [&](const InstanceFile& f) { return f.game == g; });
    if (!has) throw PlanError("no instances for game '" + g + "'");
  }

  RunSummary summary;
  summary.episodes.resize(tasks.size());
  const std::string started_at = options.clock();

  std::atomic<size_t> next{0};
  std::atomic<size_t> done{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_task = [&](size_t index) {
    const Task& task = tasks[index];
    const GameSpec& spec = *task.spec;
    const GameInstance& inst = *task.instance;
    std::map<Role, std::string> ids;
    for (const auto& [role, model] : task.models) ids[role] = model->model_id;

    EpisodeRecord& rec = summary.episodes[index];
    rec.pairing = pairing_id(ids);
    rec.game = inst.game_name;
    rec.experiment = inst.experiment_name;
    rec.instance_id = inst.instance_id;
    const fs::path path = transcript_path(plan.results_dir, ids, inst);
    rec.transcript = path.lexically_relative(plan.results_dir);

    if (plan.skip_existing && fs::exists(path)) {
      rec.skipped = true;
      try {
        const Transcript old = transcript_from_json(read_json_file(path));
        rec.outcome = old.outcome;
        rec.abort_cause = old.abort_cause;
      } catch (const std::exception&) {
        // Unreadable leftovers are reported as skipped without an outcome.
      }
      return;
    }

    const uint64_t seed = episode_seed(plan.seed, inst.game_name, inst.experiment_name, inst.instance_id);
    const LocalePack& pack = spec.pack_for(plan.language);
    std::vector<std::unique_ptr<Player>> owned;
    PlayerMap players;
    for (const auto& [role, model] : task.models) {
      PlayerSetup setup;
      setup.role = role;
      setup.flow = spec.flow;
      setup.pack = &pack;
      setup.seed = role_seed(seed, to_string(role));
      setup.instance_params = inst.params;
      setup.word_pool = plan.word_pool;
      owned.push_back(make_player(*model, setup, options.backend));
      players[role] = owned.back().get();
    }
    const Transcript t = play_episode(spec, inst, players, plan.language, seed, {options.clock, {}});
    write_file_atomic(path, dump_transcript(t));
    rec.outcome = t.outcome;
    rec.abort_cause = t.abort_cause;
  };

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        run_task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop.store(true);
        return;
      }
      const size_t n = done.fetch_add(1) + 1;
      if (options.progress) options.progress(n, tasks.size());
    }
  };

  const size_t n_workers = std::min<size_t>(static_cast<size_t>(plan.jobs), std::max<size_t>(tasks.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  json runs = json::array();
  for (const auto& rec : summary.episodes) {
    runs.push_back(record_json(rec));
    if (rec.skipped) {
      ++summary.skipped;
    } else {
      ++summary.played;
    }
    if (!rec.outcome) continue;
    switch (*rec.outcome) {
      case Outcome::kSuccess: ++summary.success; break;
      case Outcome::kLoss: ++summary.loss; break;
      case Outcome::kAborted: ++summary.aborted; break;
    }
    summary.backend_failures += rec.abort_cause == AbortCause::kBackend;
  }

  json plan_json{{"language", plan.language}, {"seed", plan.seed}, {"jobs", plan.jobs}};
  plan_json["pairings"] = json::array();
  for (const auto& p : plan.pairings) plan_json["pairings"].push_back(pairing_text(p));
  plan_json["games"] = json::array();
  for (const auto& f : plan.instance_files)
    if (wanted.empty() || wanted.count(f.game))
      plan_json["games"].push_back({{"game", f.game}, {"instances", f.instances.size()}});

  const json manifest{{"engine_version", PLAYBENCH_VERSION},
                      {"seed", plan.seed},
                      {"plan", plan_json},
                      {"started_at", started_at},
                      {"finished_at", options.clock()},
                      {"runs", runs}};
  summary.manifest = plan.results_dir / "manifest.json";
  write_file_atomic(summary.manifest, manifest.dump(2) + "\n");
  return summary;
}

}  // namespace playbench
