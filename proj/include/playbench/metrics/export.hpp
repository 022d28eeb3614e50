#pragma once

#include <string>
#include <vector>

#include "playbench/metrics/aggregate.hpp"
#include "playbench/metrics/kendall.hpp"

namespace playbench::metrics {

enum class ExportFormat { kCsv, kHtml };

ExportFormat parse_export_format(const std::string& name);

// Reports ordered by clemscore, highest first; ties by model id.
std::vector<ScoreReport> leaderboard_order(std::vector<ScoreReport> reports);

// Columns model, sc, %pl, qs with two decimals. HTML is a bare <table>.
std::string export_leaderboard(const std::vector<ScoreReport>& reports, ExportFormat format);

json leaderboard_json(const std::vector<ScoreReport>& reports);

// Dense 1-based ranks, highest score first; equal scores share a rank.
std::map<std::string, int> dense_ranks(const Ranking& ranking);

struct RankingPair {
  std::string model;
  int rank_a = 0;
  int rank_b = 0;
};

// Ranks of the models both rankings share, ordered by (rank_a, rank_b, model).
// Ranks are computed on the shared models only. Throws TooFewCommonModels.
std::vector<RankingPair> ranking_pairs(const Ranking& a, const Ranking& b);

// CSV `model,rank_a,rank_b`.
std::string ranking_pairs_export(const Ranking& a, const Ranking& b);

}  // namespace playbench::metrics
