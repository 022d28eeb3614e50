#include "playbench/metrics/language_delta.hpp"

#include <set>

#include "playbench/errors.hpp"
#include "playbench/metrics/format.hpp"

namespace playbench::metrics {

std::string DeltaCell::render() const {
  const std::string v = value ? format_short(*value) : "nan";
  const std::string d = delta ? format_fixed(*delta) : "nan";
  return v + " (" + d + ")";
}

DeltaTable language_delta(const std::map<std::string, std::vector<ScoreReport>>& reports_by_language,
                          const std::string& baseline) {
  auto base_it = reports_by_language.find(baseline);
  if (base_it == reports_by_language.end())
    throw MissingBaseline("no reports for baseline language '" + baseline + "'");

  std::map<std::string, const ScoreReport*> base;
  for (const auto& r : base_it->second) base[r.model_id] = &r;

  DeltaTable table;
  table.baseline = baseline;
  std::map<std::string, DeltaRow> rows;
  for (const auto& [language, reports] : reports_by_language) {
    table.languages.push_back(language);
    for (const auto& r : reports) {
      DeltaRow& row = rows[r.model_id];
      row.model_id = r.model_id;
      const ScoreReport* b = base.count(r.model_id) ? base.at(r.model_id) : nullptr;

      // %played is undefined only when the model has no games at all.
      DeltaCell pct;
      if (!r.per_game.empty()) pct.value = r.macro_pct_played;
      if (pct.value && b && !b->per_game.empty()) pct.delta = *pct.value - b->macro_pct_played;
      row.pct_played[language] = pct;

      DeltaCell quality;
      quality.value = r.macro_quality;
      if (quality.value && b && b->macro_quality) quality.delta = *quality.value - *b->macro_quality;
      row.quality[language] = quality;
    }
  }
  for (auto& [model, row] : rows) table.rows.push_back(std::move(row));
  return table;
}

std::string delta_table_csv(const DeltaTable& table, const std::string& metric) {
  if (metric != "pct_played" && metric != "quality")
    throw Error("unknown delta metric '" + metric + "'");
  std::string out = "model";
  for (const auto& lang : table.languages) out += "," + csv_escape(lang);
  out += "\n";
  for (const auto& row : table.rows) {
    out += csv_escape(row.model_id);
    const auto& cells = metric == "pct_played" ? row.pct_played : row.quality;
    for (const auto& lang : table.languages) {
      auto it = cells.find(lang);
      out += ",";
      out += it == cells.end() ? "nan (nan)" : it->second.render();
    }
    out += "\n";
  }
  return out;
}

}  // namespace playbench::metrics
