#include "playbench/interface/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "playbench/engine/runner.hpp"
#include "playbench/errors.hpp"
#include "playbench/games/generators.hpp"
#include "playbench/interface/service.hpp"
#include "playbench/metrics/export.hpp"
#include "playbench/metrics/language_delta.hpp"
#include "playbench/text.hpp"

namespace playbench {

namespace fs = std::filesystem;

std::vector<InstanceFile> load_instance_files(const std::vector<fs::path>& paths) {
  std::vector<InstanceFile> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.push_back(read_instance_file(f));
    } else {
      out.push_back(read_instance_file(p));
    }
  }
  return out;
}

std::string format_correlation(double tau, double p_value, int n) {
  char buf[96];
  if (std::isnan(tau)) {
    std::snprintf(buf, sizeof buf, "tau=nan p=nan n=%d", n);
  } else {
    std::snprintf(buf, sizeof buf, "tau=%.3f p=%.4g n=%d", tau, p_value, n);
  }
  return buf;
}

namespace {

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

std::vector<std::string> split_list(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) {
    size_t start = 0;
    for (;;) {
      const size_t comma = v.find(',', start);
      const std::string part = v.substr(start, comma == std::string::npos ? comma : comma - start);
      if (!part.empty()) out.push_back(part);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

games::GameCatalog load_catalog(const std::string& locale_dir) {
  auto catalog = games::GameCatalog::builtin();
  if (!locale_dir.empty()) catalog.load_locale_dir(locale_dir);
  return catalog;
}

ModelRegistry load_registry(const std::string& registry_path) {
  return registry_path.empty() ? ModelRegistry::builtin() : ModelRegistry::load(registry_path);
}

std::optional<std::vector<std::string>> load_wordle_pool(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return wordle_pool_words(path);
}

struct RunArgs {
  std::vector<std::string> games;
  std::vector<std::string> instances;
  std::vector<std::string> models;
  std::string lang = "en";
  std::string results = "results";
  uint64_t seed = 42;
  std::string registry;
  std::string locale_dir;
  std::string word_pool;
  int jobs = 1;
  int n = 10;
  bool fixed_clock = false;
  bool rerun = false;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const auto catalog = load_catalog(a.locale_dir);
  const auto registry = load_registry(a.registry);

  RunPlan plan;
  plan.games = split_list(a.games);
  for (const auto& g : plan.games) catalog.find(g);
  plan.language = a.lang;
  plan.results_dir = a.results;
  plan.seed = a.seed;
  plan.jobs = a.jobs;
  plan.skip_existing = !a.rerun;
  plan.word_pool = load_wordle_pool(a.word_pool);
  for (const auto& m : a.models) plan.pairings.push_back(parse_pairing(m));

  if (!a.instances.empty()) {
    std::vector<fs::path> paths(a.instances.begin(), a.instances.end());
    plan.instance_files = load_instance_files(paths);
  } else {
    // Without instance files every requested game gets a fresh seeded set.
    if (plan.games.empty()) throw PlanError("give --games or --instances");
    std::optional<games::WordPool> pool;
    if (!a.word_pool.empty()) pool = games::read_word_pool(a.word_pool);
    for (const auto& g : plan.games) plan.instance_files.push_back(games::generate_instances(g, a.n, a.seed, pool));
  }

  for (const auto& file : plan.instance_files) {
    if (!plan.games.empty() && std::find(plan.games.begin(), plan.games.end(), file.game) == plan.games.end())
      continue;
    if (!catalog.find(file.game).has_language(a.lang))
      err << "warning: game '" << file.game << "' has no '" << a.lang << "' prompts; playing it in en\n";
  }

  RunOptions options;
  options.catalog = &catalog;
  options.registry = &registry;
  options.clock = a.fixed_clock ? fixed_clock() : system_clock();
  const RunSummary s = run_benchmark(plan, options);

  out << "played " << s.played << ", skipped " << s.skipped << ": " << s.success << " success, " << s.loss
      << " loss, " << s.aborted << " aborted";
  if (s.backend_failures) out << " (" << s.backend_failures << " backend failures)";
  out << "\nresults in " << plan.results_dir.string() << "\n";
  return s.backend_failures ? kExitPartial : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dialogue-game benchmark engine", "playbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PLAYBENCH_VERSION);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "play a benchmark run");
  run_cmd->add_option("--games", run.games, "games to play (comma-separated or repeated)");
  run_cmd->add_option("--instances", run.instances, "instance files or directories");
  run_cmd->add_option("--models", run.models, "pairings such as 'm' or 'a+b' (repeatable)")->required();
  run_cmd->add_option("--lang", run.lang, "prompt language")->capture_default_str();
  run_cmd->add_option("--results", run.results, "results directory")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "run seed")->capture_default_str();
  run_cmd->add_option("--registry", run.registry, "model registry JSON");
  run_cmd->add_option("--locale-dir", run.locale_dir, "extra locale packs (<dir>/<game>/<lang>.json)");
  run_cmd->add_option("--word-pool", run.word_pool, "word pool for generated instances and wordle bots");
  run_cmd->add_option("--jobs", run.jobs, "parallel episodes")->capture_default_str();
  run_cmd->add_option("--n", run.n, "instances per game when generating")->capture_default_str();
  run_cmd->add_flag("--fixed-clock", run.fixed_clock, "epoch timestamps for reproducible transcripts");
  run_cmd->add_flag("--rerun", run.rerun, "replay episodes that already have transcripts");

  std::string score_results;
  bool exclude_backend = false;
  bool per_game_product = false;
  std::string score_out;
  auto* score_cmd = app.add_subcommand("score", "per-model scores of a results directory");
  score_cmd->add_option("results", score_results, "results directory")->required();
  score_cmd->add_flag("--exclude-backend-failures", exclude_backend, "drop episodes lost to backend failures");
  score_cmd->add_flag("--per-game-product", per_game_product, "clemscore as mean of per-game products");
  score_cmd->add_option("--out", score_out, "output file (default stdout)");

  std::string lb_results;
  std::string lb_format = "csv";
  std::string lb_out;
  auto* lb_cmd = app.add_subcommand("leaderboard", "leaderboard table of a results directory");
  lb_cmd->add_option("results", lb_results, "results directory")->required();
  lb_cmd->add_option("--format", lb_format, "csv or html")->capture_default_str();
  lb_cmd->add_flag("--exclude-backend-failures", exclude_backend, "drop episodes lost to backend failures");
  lb_cmd->add_flag("--per-game-product", per_game_product, "clemscore as mean of per-game products");
  lb_cmd->add_option("--out", lb_out, "output file (default stdout)");

  std::string corr_a, corr_b, corr_alias, corr_pairs;
  auto* corr_cmd = app.add_subcommand("correlate", "Kendall's tau between two rankings");
  corr_cmd->add_option("a", corr_a, "ranking CSV (model,score)")->required();
  corr_cmd->add_option("b", corr_b, "ranking CSV (model,score)")->required();
  corr_cmd->add_option("--alias", corr_alias, "alias CSV (alias,model_id)");
  corr_cmd->add_option("--pairs", corr_pairs, "write rank pairs CSV for a bump chart");

  std::string inst_game, inst_pool, inst_out, inst_experiment = "default";
  int inst_n = 10;
  uint64_t inst_seed = 42;
  auto* inst_cmd = app.add_subcommand("instances", "generate an instance file");
  inst_cmd->add_option("game", inst_game, "game name")->required();
  inst_cmd->add_option("--n", inst_n, "number of instances")->capture_default_str();
  inst_cmd->add_option("--seed", inst_seed, "generator seed")->capture_default_str();
  inst_cmd->add_option("--word-pool", inst_pool, "word pool file for word games");
  inst_cmd->add_option("--experiment", inst_experiment, "experiment name")->capture_default_str();
  inst_cmd->add_option("--out", inst_out, "output file (default stdout)");

  std::string serve_results = "results", serve_bind = "127.0.0.1", serve_partner = "scripted:perfect";
  std::string serve_registry, serve_locale_dir, serve_pool;
  std::vector<std::string> serve_instances;
  int serve_port = 8080;
  uint64_t serve_seed = 42;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP service for human play and results");
  serve_cmd->add_option("--results", serve_results, "results directory")->capture_default_str();
  serve_cmd->add_option("--instances", serve_instances, "instance files or directories")->required();
  serve_cmd->add_option("--bind", serve_bind, "bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve_port, "port")->capture_default_str();
  serve_cmd->add_option("--partner", serve_partner, "model for the non-human seats")->capture_default_str();
  serve_cmd->add_option("--registry", serve_registry, "model registry JSON");
  serve_cmd->add_option("--locale-dir", serve_locale_dir, "extra locale packs");
  serve_cmd->add_option("--word-pool", serve_pool, "word pool for wordle bots");
  serve_cmd->add_option("--seed", serve_seed, "seed for partner bots")->capture_default_str();

  std::vector<std::string> delta_runs;
  std::string delta_baseline = "en", delta_metric = "quality";
  auto* delta_cmd = app.add_subcommand("delta", "per-language scores against a baseline language");
  delta_cmd->add_option("runs", delta_runs, "language=results_dir pairs")->required();
  delta_cmd->add_option("--baseline", delta_baseline, "baseline language")->capture_default_str();
  delta_cmd->add_option("--metric", delta_metric, "quality or pct_played")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const metrics::ScoreOptions score_options{exclude_backend, per_game_product};

    if (*run_cmd) return cmd_run(run, out, err);

    if (*score_cmd) {
      json reports = json::array();
      for (const auto& r : metrics::score_run(score_results, score_options)) reports.push_back(metrics::to_json(r));
      write_output(reports.dump(2) + "\n", score_out, out);
      return kExitOk;
    }

    if (*lb_cmd) {
      const auto format = metrics::parse_export_format(lb_format);
      write_output(metrics::export_leaderboard(metrics::score_run(lb_results, score_options), format), lb_out, out);
      return kExitOk;
    }

    if (*corr_cmd) {
      const metrics::AliasMap aliases = corr_alias.empty() ? metrics::AliasMap{} : metrics::read_alias_map(corr_alias);
      const auto a = metrics::read_ranking_csv(corr_a, aliases);
      const auto b = metrics::read_ranking_csv(corr_b, aliases);
      const auto r = metrics::kendall_tau(a, b);
      out << format_correlation(r.tau, r.p_value, r.n_common) << "\n";
      if (r.n_dropped) {
        std::vector<std::string> dropped;
        for (const auto& [m, _] : a)
          if (!b.count(m)) dropped.push_back(m);
        for (const auto& [m, _] : b)
          if (!a.count(m)) dropped.push_back(m);
        err << "note: dropped models found in only one ranking: " << text::join(dropped, ", ") << "\n";
      }
      if (!corr_pairs.empty()) write_file_atomic(corr_pairs, metrics::ranking_pairs_export(a, b));
      return kExitOk;
    }

    if (*inst_cmd) {
      std::optional<games::WordPool> pool;
      if (!inst_pool.empty()) pool = games::read_word_pool(inst_pool);
      const auto file = games::generate_instances(inst_game, inst_n, inst_seed, pool, {inst_experiment, 0});
      write_output(to_json(file).dump(2) + "\n", inst_out, out);
      return kExitOk;
    }

    if (*serve_cmd) {
      SessionConfig config;
      std::vector<fs::path> paths(serve_instances.begin(), serve_instances.end());
      config.instance_files = load_instance_files(paths);
      config.partner_model = serve_partner;
      config.results_dir = serve_results;
      config.seed = serve_seed;
      config.word_pool = load_wordle_pool(serve_pool);
      auto registry = load_registry(serve_registry);
      registry.resolve(serve_partner);
      SessionManager sessions(std::move(config), load_catalog(serve_locale_dir), std::move(registry));
      Service service(sessions, {serve_results, score_options});
      out << "serving on http://" << serve_bind << ":" << serve_port << "\n" << std::flush;
      if (!service.listen(serve_bind, serve_port)) {
        err << "error: cannot listen on " << serve_bind << ":" << serve_port << "\n";
        return kExitError;
      }
      return kExitOk;
    }

    if (*delta_cmd) {
      std::map<std::string, std::vector<metrics::ScoreReport>> by_language;
      for (const auto& spec : delta_runs) {
        const size_t eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw Error("expected language=results_dir, got '" + spec + "'");
        by_language[spec.substr(0, eq)] = metrics::score_run(spec.substr(eq + 1), score_options);
      }
      out << metrics::delta_table_csv(metrics::language_delta(by_language, delta_baseline), delta_metric);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace playbench
