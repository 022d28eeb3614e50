#include "playbench/metrics/export.hpp"

#include <algorithm>
#include <set>

#include "playbench/errors.hpp"
#include "playbench/metrics/format.hpp"

namespace playbench::metrics {

ExportFormat parse_export_format(const std::string& name) {
  if (name == "csv") return ExportFormat::kCsv;
  if (name == "html") return ExportFormat::kHtml;
  throw Error("unknown leaderboard format '" + name + "' (csv or html)");
}

std::vector<ScoreReport> leaderboard_order(std::vector<ScoreReport> reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const ScoreReport& a, const ScoreReport& b) {
    if (a.clemscore != b.clemscore) return a.clemscore > b.clemscore;
    return a.model_id < b.model_id;
  });
  return reports;
}

namespace {

std::string html_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string export_leaderboard(const std::vector<ScoreReport>& reports, ExportFormat format) {
  const auto ordered = leaderboard_order(reports);
  std::string out;
  if (format == ExportFormat::kCsv) {
    out = "model,sc,%pl,qs\n";
    for (const auto& r : ordered)
      out += csv_escape(r.model_id) + "," + format_fixed(r.clemscore) + "," +
             format_fixed(r.macro_pct_played) + "," + format_fixed(r.macro_quality) + "\n";
    return out;
  }
  out =
      "<table class=\"leaderboard\">\n"
      "<thead><tr><th>model</th><th>sc</th><th>%pl</th><th>qs</th></tr></thead>\n"
      "<tbody>\n";
  for (const auto& r : ordered)
    out += "<tr><td>" + html_escape(r.model_id) + "</td><td>" + format_fixed(r.clemscore) +
           "</td><td>" + format_fixed(r.macro_pct_played) + "</td><td>" +
           format_fixed(r.macro_quality) + "</td></tr>\n";
  out += "</tbody>\n</table>\n";
  return out;
}

json leaderboard_json(const std::vector<ScoreReport>& reports) {
  json rows = json::array();
  for (const auto& r : leaderboard_order(reports)) rows.push_back(to_json(r));
  return rows;
}

std::map<std::string, int> dense_ranks(const Ranking& ranking) {
  std::set<double, std::greater<>> distinct;
  for (const auto& [model, score] : ranking) distinct.insert(score);
  std::map<double, int> rank_of;
  int rank = 0;
  for (double s : distinct) rank_of[s] = ++rank;
  std::map<std::string, int> out;
  for (const auto& [model, score] : ranking) out[model] = rank_of.at(score);
  return out;
}

std::vector<RankingPair> ranking_pairs(const Ranking& a, const Ranking& b) {
  Ranking common_a, common_b;
  for (const auto& [model, score] : a) {
    auto it = b.find(model);
    if (it == b.end()) continue;
    common_a[model] = score;
    common_b[model] = it->second;
  }
  if (common_a.size() < 2)
    throw TooFewCommonModels("rankings share " + std::to_string(common_a.size()) +
                             " models; at least 2 are needed");
  const auto ranks_a = dense_ranks(common_a);
  const auto ranks_b = dense_ranks(common_b);
  std::vector<RankingPair> out;
  for (const auto& [model, rank] : ranks_a) out.push_back({model, rank, ranks_b.at(model)});
  std::sort(out.begin(), out.end(), [](const RankingPair& x, const RankingPair& y) {
    if (x.rank_a != y.rank_a) return x.rank_a < y.rank_a;
    if (x.rank_b != y.rank_b) return x.rank_b < y.rank_b;
    return x.model < y.model;
  });
  return out;
}

std::string ranking_pairs_export(const Ranking& a, const Ranking& b) {
  std::string out = "model,rank_a,rank_b\n";
  for (const auto& p : ranking_pairs(a, b))
    out += csv_escape(p.model) + "," + std::to_string(p.rank_a) + "," + std::to_string(p.rank_b) + "\n";
  return out;
}

}  // namespace playbench::metrics
