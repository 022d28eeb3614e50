#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>

namespace playbench::metrics {

// model id -> score (higher is better).
using Ranking = std::map<std::string, double>;

struct CorrelationResult {
  double tau = 0.0;      // Kendall's tau-b; NaN when one side is constant
  double p_value = 1.0;  // two-sided, normal approximation
  int n_common = 0;
  int n_dropped = 0;     // models present in only one ranking
};

// Tau-b over paired observations via Knight's O(n log n) merge-sort count.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

// Two-sided p-value for tau-b under independence, tie-corrected variance.
double kendall_p_value(std::span<const double> x, std::span<const double> y);

// Correlation over the models both rankings share. Throws TooFewCommonModels
// below two.
CorrelationResult kendall_tau(const Ranking& a, const Ranking& b);

// Aliases map external model names onto internal ones.
using AliasMap = std::map<std::string, std::string>;

AliasMap read_alias_map(const std::filesystem::path& path);

// CSV with header `model,score`; aliases are applied to the model column.
Ranking read_ranking_csv(const std::filesystem::path& path, const AliasMap& aliases = {});
Ranking parse_ranking_csv(const std::string& contents, const AliasMap& aliases = {});

}  // namespace playbench::metrics
