// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "playbench/backends/factory.hpp"
#include "playbench/engine/runner.hpp"
#include "playbench/games/catalog.hpp"
#include "playbench/games/generators.hpp"
#include "playbench/games/quality.hpp"
#include "playbench/metrics/aggregate.hpp"
#include "playbench/metrics/export.hpp"
#include "playbench/metrics/format.hpp"
#include "playbench/metrics/kendall.hpp"
#include "test_support.hpp"

namespace playbench::acceptance {
namespace {

using namespace playbench::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  std::string name;
  double limit_seconds;  // 0: no runtime bound
  std::function<void(Check&)> body;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> transcripts_by_path(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.path().filename() == "transcript.json") out[e.path().lexically_relative(root).generic_string()] = slurp(e.path());
  return out;
}

// Plays one episode with a model per role, built the way the runner does.
Transcript play_with(const GameSpec& spec, const GameInstance& inst, const std::map<Role, ModelSpec>& models,
                     uint64_t run_seed, const std::optional<std::vector<std::string>>& word_pool = std::nullopt) {
  const uint64_t seed = episode_seed(run_seed, inst.game_name, inst.experiment_name, inst.instance_id);
  const LocalePack& pack = spec.pack_for("en");
  std::vector<std::unique_ptr<Player>> owned;
  PlayerMap players;
  for (const auto& [role, model] : models) {
    PlayerSetup setup;
    setup.role = role;
    setup.flow = spec.flow;
    setup.pack = &pack;
    setup.seed = role_seed(seed, to_string(role));
    setup.instance_params = inst.params;
    setup.word_pool = word_pool;
    owned.push_back(make_player(model, setup));
    players[role] = owned.back().get();
  }
  return play_episode(spec, inst, players, "en", seed, {fixed_clock(), {}});
}

// ---- criteria ----

void aggregation(Check& c) {
  std::vector<metrics::GameResult> games;
  const std::vector<std::pair<std::string, double>> qualities{
      {"wordle", 72.0}, {"taboo", 80.5}, {"drawing", 95.2}, {"reference", 100.0}};
  for (const auto& [game, q] : qualities) {
    auto r = metrics::make_game_result(game, 1, {q});
    c.require(r.pct_played == 100.0, game + " pct_played is not 100");
    games.push_back(r);
  }
  const auto report = metrics::make_score_report("synthetic", games);
  const std::string serialized = metrics::to_json(report).at("clemscore").dump();
  c.require(serialized == "86.93", "serialized clemscore " + serialized);
  c.require(metrics::format_fixed(report.clemscore) == "86.93", "formatted clemscore " + metrics::format_fixed(report.clemscore));
}

void random_baseline(Check& c) {
  const auto registry = ModelRegistry::builtin();
  const GameSpec spec = games::builtin_game_spec(Flow::kReference);
  const auto file = games::generate_instances("reference", 1000, 42);
  std::map<Role, ModelSpec> models{{Role::kPlayerA, registry.resolve("scripted:perfect")},
                                   {Role::kPlayerB, registry.resolve("scripted:random_reference")}};
  double sum = 0;
  int n = 0;
  for (const auto& inst : file.instances) {
    const Transcript t = play_with(spec, inst, models, 42);
    c.require(t.outcome != Outcome::kAborted, "random episode aborted");
    if (t.outcome == Outcome::kAborted) return;
    sum += games::episode_quality(Flow::kReference, t);
    ++n;
  }
  const double mean = sum / n;
  c.require(n == 1000, "played " + std::to_string(n) + " episodes");
  c.require(std::abs(mean - 100.0 / 3.0) <= 3.0, "mean quality " + metrics::format_fixed(mean));
  c.detail = c.ok ? "mean quality " + metrics::format_fixed(mean) + " over 1000 episodes" : c.detail;
}

void wordle_oracle_equivalence(Check& c) {
  std::mt19937_64 rng(20240601);
  const std::string alphabet = "abcdef";
  for (int i = 0; i < 100000; ++i) {
    std::string g(5, 'a'), t(5, 'a');
    for (auto& ch : g) ch = alphabet[rng() % alphabet.size()];
    for (auto& ch : t) ch = alphabet[rng() % alphabet.size()];
    if (games::wordle_feedback(g, t) != wordle_oracle(g, t)) {
      c.require(false, "mismatch on guess " + g + " target " + t);
      return;
    }
  }
  c.detail = "100000 pairs";
}

void kendall_oracle(Check& c) {
  auto agree = [&](const std::vector<double>& x, const std::vector<double>& y) {
    const double got = metrics::kendall_tau_b(x, y);
    const double want = kendall_pairs_oracle(x, y);
    if (std::isnan(want)) return std::isnan(got);
    return std::abs(got - want) <= 1e-12;
  };
  long checked = 0;
  for (int n = 2; n <= 7; ++n) {
    std::vector<double> x(static_cast<size_t>(n));
    std::iota(x.begin(), x.end(), 0.0);
    std::vector<double> y = x;
    do {
      c.require(agree(x, y), "permutation mismatch at n=" + std::to_string(n));
      ++checked;
    } while (std::next_permutation(y.begin(), y.end()));
    std::vector<double> rev(x.rbegin(), x.rend());
    c.require(metrics::kendall_tau_b(x, x) == 1.0, "identity is not exactly 1 at n=" + std::to_string(n));
    c.require(metrics::kendall_tau_b(x, rev) == -1.0, "reversal is not exactly -1 at n=" + std::to_string(n));
  }
  std::mt19937_64 rng(77);
  for (int i = 0; i < 1000; ++i) {
    const size_t n = 2 + rng() % 19;
    const uint64_t levels = 1 + rng() % 6;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = static_cast<double>(rng() % levels);
    for (auto& v : y) v = static_cast<double>(rng() % levels);
    c.require(agree(x, y), "tied ranking mismatch at n=" + std::to_string(n));
    ++checked;
  }
  if (c.ok) c.detail = std::to_string(checked) + " rankings";
}

void perfect_play(Check& c) {
  const auto registry = ModelRegistry::builtin();
  const ModelSpec perfect = registry.resolve("scripted:perfect");
  const auto taboo_pool = games::read_word_pool(data_path("taboo_pool.txt"));
  const auto wordle_pool = games::read_word_pool(data_path("wordle_pool.txt"));
  std::vector<Transcript> transcripts;
  for (const std::string game : {"reference", "drawing", "taboo", "wordle"}) {
    const GameSpec spec = games::builtin_game_spec(parse_flow(game));
    std::optional<games::WordPool> pool;
    if (game == "taboo") pool = taboo_pool;
    if (game == "wordle") pool = wordle_pool;
    const auto file = games::generate_instances(game, 20, 42, pool);
    for (const auto& inst : file.instances) {
      std::map<Role, ModelSpec> models;
      for (Role r : spec.roles) models[r] = perfect;
      // Oracle-solvable: the guesser's candidate pool is the target alone.
      std::optional<std::vector<std::string>> guess_pool;
      if (game == "wordle") guess_pool = std::vector<std::string>{inst.params.at("target_word").get<std::string>()};
      transcripts.push_back(play_with(spec, inst, models, 42, guess_pool));
    }
  }
  const auto reports = metrics::score_transcripts(transcripts);
  c.require(reports.size() == 1, "expected one pairing");
  if (!c.ok) return;
  for (const auto& g : reports[0].per_game) {
    c.require(g.pct_played == 100.0, g.game_name + " pct_played " + metrics::format_fixed(g.pct_played));
    c.require(g.quality && *g.quality == 100.0, g.game_name + " quality " + metrics::format_fixed(g.quality));
  }
  c.require(reports[0].per_game.size() == 4, "expected four games");
  c.require(reports[0].clemscore == 100.0, "clemscore " + metrics::format_fixed(reports[0].clemscore));
}

void abort_semantics(Check& c) {
  const auto inst = taboo_instance("plane", {"fly", "wing", "airport"});
  const Transcript played = play_scripted(
      inst, {{Role::kPlayerA, {"CLUE: travels in the sky", "CLUE: has engines"}},
             {Role::kPlayerB, {"GUESS: bird", "GUESS: plane"}}});
  const Transcript malformed = play_scripted(
      taboo_instance("apple", {"fruit", "red", "tree"}, 1),
      {{Role::kPlayerA, {"CLUE: keeps the doctor away"}}, {Role::kPlayerB, {"I think it is an apple"}}});
  const int aborted = (played.outcome == Outcome::kAborted) + (malformed.outcome == Outcome::kAborted);
  c.require(aborted == 1, "expected exactly one aborted transcript, got " + std::to_string(aborted));
  c.require(malformed.outcome == Outcome::kAborted && malformed.abort_cause == AbortCause::kFormatViolation,
            "malformed reply did not abort with a format violation");
  const auto reports = metrics::score_transcripts({played, malformed});
  c.require(reports.size() == 1 && reports[0].per_game.size() == 1, "unexpected report shape");
  if (!c.ok) return;
  const auto& g = reports[0].per_game[0];
  c.require(g.n_total == 2, "n_total " + std::to_string(g.n_total));
  c.require(g.n_played == 1, "n_played " + std::to_string(g.n_played));
  c.require(g.pct_played == 50.0, "pct_played " + metrics::format_fixed(g.pct_played));
  c.require(g.quality && *g.quality == 50.0, "quality " + metrics::format_fixed(g.quality));
  c.require(g.quality && reports[0].clemscore == 0.5 * *g.quality,
            "clemscore " + metrics::format_fixed(reports[0].clemscore));
}

RunPlan full_plan(const fs::path& results) {
  RunPlan plan;
  const auto taboo_pool = games::read_word_pool(data_path("taboo_pool.txt"));
  const auto wordle_pool = games::read_word_pool(data_path("wordle_pool.txt"));
  for (const auto& name : games::GameCatalog::builtin().names()) {
    const Flow flow = parse_flow(name);
    std::optional<games::WordPool> pool;
    if (flow == Flow::kTaboo) pool = taboo_pool;
    if (flow == Flow::kWordle || flow == Flow::kWordleClue || flow == Flow::kWordleCritic) pool = wordle_pool;
    plan.instance_files.push_back(games::generate_instances(name, 10, 42, pool));
  }
  plan.pairings = {{"scripted:perfect"}, {"scripted:perfect", "scripted:random_reference"}};
  plan.games = {};
  plan.results_dir = results;
  plan.seed = 42;
  plan.jobs = 4;
  plan.word_pool = wordle_pool_words(data_path("wordle_pool.txt").string());
  return plan;
}

void determinism(Check& c) {
  TempDir a, b;
  RunOptions options;
  options.clock = fixed_clock();
  // The mixed pairing only covers the reference game.
  auto plan_a = full_plan(a.path());
  auto plan_b = full_plan(b.path());
  plan_a.pairings = plan_b.pairings = {{"scripted:perfect"}};
  const auto sa = run_benchmark(plan_a, options);
  const auto sb = run_benchmark(plan_b, options);
  RunPlan ref_a = plan_a, ref_b = plan_b;
  ref_a.games = ref_b.games = {"reference"};
  ref_a.pairings = ref_b.pairings = {{"scripted:perfect", "scripted:random_reference"}};
  run_benchmark(ref_a, options);
  run_benchmark(ref_b, options);

  const auto ta = transcripts_by_path(a.path());
  const auto tb = transcripts_by_path(b.path());
  c.require(!ta.empty() && sa.played > 0, "nothing was played");
  c.require(ta == tb, "transcripts differ between runs");
  const auto board_a = metrics::export_leaderboard(metrics::score_run(a.path()), metrics::ExportFormat::kCsv);
  const auto board_b = metrics::export_leaderboard(metrics::score_run(b.path()), metrics::ExportFormat::kCsv);
  c.require(board_a == board_b, "leaderboards differ between runs");
  if (c.ok) c.detail = std::to_string(ta.size()) + " transcripts identical";
}

void locale_swap(Check& c) {
  auto catalog = games::GameCatalog::builtin();
  const LocalePack& en = catalog.find("reference").pack_for("en");
  catalog.add_locale_pack("reference", pseudo_pack(en, "qps"));

  TempDir dir;
  RunPlan plan;
  plan.instance_files = {games::generate_instances("reference", 50, 42)};
  plan.pairings = {{"scripted:perfect"}, {"scripted:perfect", "scripted:random_reference"}};
  RunOptions options;
  options.catalog = &catalog;
  options.clock = fixed_clock();

  std::map<std::string, std::vector<metrics::ScoreReport>> reports;
  std::map<std::string, std::map<std::string, std::string>> transcripts;
  for (const std::string lang : {"en", "qps"}) {
    plan.language = lang;
    plan.results_dir = dir / lang;
    run_benchmark(plan, options);
    reports[lang] = metrics::score_run(dir / lang);
    transcripts[lang] = transcripts_by_path(dir / lang);
  }

  c.require(transcripts["en"].size() == 100 && transcripts["qps"].size() == 100, "expected 100 transcripts per language");
  c.require(metrics::leaderboard_json(reports["en"]) == metrics::leaderboard_json(reports["qps"]),
            "scores differ between languages");
  for (const auto& r : reports["en"]) {
    for (const auto& g : r.per_game) c.require(g.pct_played == 100.0, r.model_id + " did not play every episode");
  }

  size_t different_prompts = 0;
  for (const auto& [path, text_en] : transcripts["en"]) {
    auto it = transcripts["qps"].find(path);
    c.require(it != transcripts["qps"].end(), "missing qps transcript " + path);
    if (it == transcripts["qps"].end()) return;
    const Transcript te = transcript_from_json(json::parse(text_en));
    const Transcript tq = transcript_from_json(json::parse(it->second));
    c.require(tq.meta.language == "qps", "qps run recorded language " + tq.meta.language);
    c.require(te.outcome == tq.outcome, "outcome differs for " + path);
    for (size_t i = 0; i < std::min(te.events.size(), tq.events.size()); ++i) {
      if (te.events[i].kind == EventKind::kSendPrompt && te.events[i].content != tq.events[i].content) {
        ++different_prompts;
        break;
      }
    }
  }
  c.require(different_prompts == transcripts["en"].size(), "some prompts were not localized");
  if (c.ok) c.detail = "100 episodes per language, identical scores";
}

}  // namespace
}  // namespace playbench::acceptance

int main() {
  using namespace playbench::acceptance;
  const std::vector<Criterion> criteria{
      {"aggregation: qualities 72/80.5/95.2/100 serialize to clemscore 86.93", 1, aggregation},
      {"random baseline: reference quality within 33.33 +- 3", 10, random_baseline},
      {"wordle feedback matches the assignment oracle", 30, wordle_oracle_equivalence},
      {"kendall tau-b matches the pair-counting oracle", 30, kendall_oracle},
      {"perfect play: pct_played 100 and quality 100 on every game", 5, perfect_play},
      {"abort semantics: one aborted of two halves the score", 0, abort_semantics},
      {"determinism: two seed-42 runs are byte-identical", 0, determinism},
      {"locale swap: pseudo-locale run scores like English", 0, locale_swap},
  };
  int failures = 0;
  for (const auto& crit : criteria) {
    Check check;
    const auto start = Clock::now();
    try {
      crit.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (crit.limit_seconds > 0 && seconds >= crit.limit_seconds)
      check.require(false, "took " + playbench::metrics::format_fixed(seconds) + "s, limit " +
                               playbench::metrics::format_short(crit.limit_seconds) + "s");
    std::cout << (check.ok ? "PASS " : "FAIL ") << crit.name << " [" << playbench::metrics::format_fixed(seconds, 3)
              << "s]";
    if (!check.detail.empty()) std::cout << ": " << check.detail;
    std::cout << "\n";
    failures += !check.ok;
  }
  std::cout << (criteria.size() - static_cast<size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
  return failures ? 1 : 0;
}
