#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "playbench/engine/types.hpp"

namespace playbench::metrics {

struct GameResult {
  std::string game_name;
  int n_total = 0;
  int n_played = 0;
  double pct_played = 0.0;
  std::optional<double> quality;  // undefined when nothing was played
  std::optional<double> quality_stddev;
};

struct ScoreReport {
  std::string model_id;
  std::vector<GameResult> per_game;
  double macro_pct_played = 0.0;
  std::optional<double> macro_quality;
  double clemscore = 0.0;
};

struct ScoreOptions {
  // Drop backend-failure episodes entirely instead of counting them as aborted.
  bool exclude_backend_failures = false;
  // Average pct_played/100 * quality per game instead of multiplying the
  // macro averages.
  bool per_game_product = false;
};

// Scores of the played episodes of one game; `n_total` includes the aborted ones.
GameResult make_game_result(std::string game_name, int n_total, std::vector<double> qualities);

// Macro averages over games (unweighted) and the headline score.
ScoreReport make_score_report(std::string model_id, std::vector<GameResult> per_game,
                              const ScoreOptions& options = {});

// One report per pairing, sorted by pairing id; games sorted by name.
std::vector<ScoreReport> score_transcripts(const std::vector<Transcript>& transcripts,
                                           const ScoreOptions& options = {});

// Reads every transcript.json below `results_dir`. Throws EmptyRun.
std::vector<Transcript> load_transcripts(const std::filesystem::path& results_dir);

std::vector<ScoreReport> score_run(const std::filesystem::path& results_dir,
                                   const ScoreOptions& options = {});

// JSON form with values rounded for display ("nan" for undefined quality).
json to_json(const GameResult& result);
json to_json(const ScoreReport& report);

}  // namespace playbench::metrics
