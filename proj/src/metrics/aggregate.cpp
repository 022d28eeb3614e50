#include "playbench/metrics/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "playbench/engine/serialization.hpp"
#include "playbench/errors.hpp"
#include "playbench/games/quality.hpp"
#include "playbench/metrics/format.hpp"

namespace playbench::metrics {

namespace fs = std::filesystem;

namespace {

// Sums in sorted order so the result does not depend on enumeration order.
double sorted_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

json rounded(const std::optional<double>& v) {
  if (!v || std::isnan(*v)) return "nan";
  return round_half_away(*v);
}

}  // namespace

GameResult make_game_result(std::string game_name, int n_total, std::vector<double> qualities) {
  GameResult r;
  r.game_name = std::move(game_name);
  r.n_total = n_total;
  r.n_played = static_cast<int>(qualities.size());
  if (r.n_played > n_total) throw Error("more played than total episodes for " + r.game_name);
  r.pct_played = n_total > 0 ? 100.0 * r.n_played / n_total : 0.0;
  if (!qualities.empty()) {
    const double mean = sorted_mean(qualities);
    std::vector<double> sq;
    for (double q : qualities) sq.push_back((q - mean) * (q - mean));
    r.quality = mean;
    r.quality_stddev = std::sqrt(sorted_mean(std::move(sq)));
  }
  return r;
}

ScoreReport make_score_report(std::string model_id, std::vector<GameResult> per_game,
                              const ScoreOptions& options) {
  ScoreReport report;
  report.model_id = std::move(model_id);
  std::sort(per_game.begin(), per_game.end(),
            [](const GameResult& a, const GameResult& b) { return a.game_name < b.game_name; });
  report.per_game = std::move(per_game);
  if (report.per_game.empty()) return report;

  std::vector<double> pct;
  std::vector<double> quality;
  std::vector<double> products;
  for (const auto& g : report.per_game) {
    pct.push_back(g.pct_played);
    if (g.quality) quality.push_back(*g.quality);
    products.push_back(g.pct_played / 100.0 * g.quality.value_or(0.0));
  }
  report.macro_pct_played = sorted_mean(pct);
  if (!quality.empty()) report.macro_quality = sorted_mean(quality);

  if (options.per_game_product)
    report.clemscore = sorted_mean(products);
  else
    report.clemscore = report.macro_quality ? report.macro_pct_played / 100.0 * *report.macro_quality
                                            : 0.0;
  return report;
}

std::vector<ScoreReport> score_transcripts(const std::vector<Transcript>& transcripts,
                                           const ScoreOptions& options) {
  struct Tally {
    int n_total = 0;
    std::vector<double> qualities;
  };
  std::map<std::string, std::map<std::string, Tally>> by_pairing;
  for (const auto& t : transcripts) {
    if (options.exclude_backend_failures && t.outcome == Outcome::kAborted &&
        (t.abort_cause == AbortCause::kBackend || t.abort_cause == AbortCause::kHumanTimeout))
      continue;
    Tally& tally = by_pairing[pairing_id(t.meta.models)][t.meta.game];
    ++tally.n_total;
    if (t.outcome != Outcome::kAborted)
      tally.qualities.push_back(games::episode_quality(parse_flow(t.meta.game), t));
  }
  std::vector<ScoreReport> reports;
  for (auto& [pairing, per_game] : by_pairing) {
    std::vector<GameResult> results;
    for (auto& [game, tally] : per_game)
      results.push_back(make_game_result(game, tally.n_total, std::move(tally.qualities)));
    reports.push_back(make_score_report(pairing, std::move(results), options));
  }
  return reports;
}

std::vector<Transcript> load_transcripts(const fs::path& results_dir) {
  if (!fs::is_directory(results_dir))
    throw EmptyRun("results directory not found: " + results_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(results_dir))
    if (entry.is_regular_file() && entry.path().filename() == "transcript.json")
      files.push_back(entry.path());
  if (files.empty()) throw EmptyRun("no transcripts below " + results_dir.string());
  std::vector<Transcript> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    try {
      out.push_back(transcript_from_json(read_json_file(f)));
    } catch (const json::exception& e) {
      throw Error("malformed transcript " + f.string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<ScoreReport> score_run(const fs::path& results_dir, const ScoreOptions& options) {
  return score_transcripts(load_transcripts(results_dir), options);
}

json to_json(const GameResult& r) {
  return json{{"game", r.game_name},
              {"n_total", r.n_total},
              {"n_played", r.n_played},
              {"pct_played", rounded(r.pct_played)},
              {"quality", rounded(r.quality)},
              {"quality_stddev", rounded(r.quality_stddev)}};
}

json to_json(const ScoreReport& r) {
  json games = json::array();
  for (const auto& g : r.per_game) games.push_back(to_json(g));
  return json{{"model", r.model_id},
              {"clemscore", rounded(r.clemscore)},
              {"pct_played", rounded(r.macro_pct_played)},
              {"quality", rounded(r.macro_quality)},
              {"games", games}};
}

}  // namespace playbench::metrics
