#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "playbench/metrics/aggregate.hpp"

namespace playbench::metrics {

struct DeltaCell {
  std::optional<double> value;
  std::optional<double> delta;  // value - baseline value

  // "99.44 (-0.56)", "0.0 (-100.00)", "nan (nan)".
  std::string render() const;
};

struct DeltaRow {
  std::string model_id;
  std::map<std::string, DeltaCell> pct_played;  // by language
  std::map<std::string, DeltaCell> quality;
};

struct DeltaTable {
  std::string baseline;
  std::vector<std::string> languages;  // sorted, baseline included
  std::vector<DeltaRow> rows;          // sorted by model id
};

// Per model and language, macro %played and quality next to their difference
// from the baseline language. Throws MissingBaseline.
DeltaTable language_delta(const std::map<std::string, std::vector<ScoreReport>>& reports_by_language,
                          const std::string& baseline = "en");

// CSV for one metric ("pct_played" or "quality"): model, then one column per
// language holding the rendered cell.
std::string delta_table_csv(const DeltaTable& table, const std::string& metric);

}  // namespace playbench::metrics
