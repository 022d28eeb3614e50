#include "playbench/metrics/kendall.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "playbench/engine/serialization.hpp"
#include "playbench/errors.hpp"
#include "playbench/text.hpp"

namespace playbench::metrics {

namespace {

struct TieSums {
  int64_t pairs = 0;  // sum t(t-1)/2
  double v1 = 0;      // sum t(t-1)
  double v2 = 0;      // sum t(t-1)(t-2)
  double vt = 0;      // sum t(t-1)(2t+5)
};

// Tie statistics of an already sorted sequence.
TieSums tie_sums(const std::vector<double>& sorted) {
  TieSums s;
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    s.pairs += static_cast<int64_t>((j - i) * (j - i - 1) / 2);
    s.v1 += t * (t - 1);
    s.v2 += t * (t - 1) * (t - 2);
    s.vt += t * (t - 1) * (2 * t + 5);
    i = j;
  }
  return s;
}

// Sorts `v` in place and returns the number of inversions removed.
int64_t merge_count(std::vector<double>& v, std::vector<double>& tmp, size_t lo, size_t hi) {
  if (hi - lo < 2) return 0;
  const size_t mid = lo + (hi - lo) / 2;
  int64_t swaps = merge_count(v, tmp, lo, mid) + merge_count(v, tmp, mid, hi);
  size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<int64_t>(mid - i);
      tmp[k++] = v[j++];
    } else {
      tmp[k++] = v[i++];
    }
  }
  while (i < mid) tmp[k++] = v[i++];
  while (j < hi) tmp[k++] = v[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, v.begin() + lo);
  return swaps;
}

struct PairCounts {
  int64_t n0 = 0;     // all pairs
  int64_t s = 0;      // concordant minus discordant
  TieSums x_ties;
  TieSums y_ties;
};

PairCounts count_pairs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("kendall: rankings differ in length");
  const size_t n = x.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  PairCounts c;
  c.n0 = static_cast<int64_t>(n * (n - (n > 0 ? 1 : 0)) / 2);

  std::vector<double> xs(n), ys(n);
  for (size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }
  c.x_ties = tie_sums(xs);

  // Pairs tied in both coordinates.
  int64_t joint = 0;
  size_t i = 0;
  while (i < n) {
    size_t j = i + 1;
    while (j < n && xs[j] == xs[i] && ys[j] == ys[i]) ++j;
    joint += static_cast<int64_t>((j - i) * (j - i - 1) / 2);
    i = j;
  }

  std::vector<double> tmp(n);
  const int64_t swaps = merge_count(ys, tmp, 0, n);
  c.y_ties = tie_sums(ys);
  c.s = c.n0 - c.x_ties.pairs - c.y_ties.pairs + joint - 2 * swaps;
  return c;
}

}  // namespace

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  const PairCounts c = count_pairs(x, y);
  const double denom = std::sqrt(static_cast<double>(c.n0 - c.x_ties.pairs) *
                                 static_cast<double>(c.n0 - c.y_ties.pairs));
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(static_cast<double>(c.s) / denom, -1.0, 1.0);
}

double kendall_p_value(std::span<const double> x, std::span<const double> y) {
  const PairCounts c = count_pairs(x, y);
  const double n = static_cast<double>(x.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double v0 = n * (n - 1) * (2 * n + 5);
  double var = (v0 - c.x_ties.vt - c.y_ties.vt) / 18.0 +
               c.x_ties.v1 * c.y_ties.v1 / (2.0 * n * (n - 1));
  if (n > 2) var += c.x_ties.v2 * c.y_ties.v2 / (9.0 * n * (n - 1) * (n - 2));
  if (var <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double z = static_cast<double>(c.s) / std::sqrt(var);
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

CorrelationResult kendall_tau(const Ranking& a, const Ranking& b) {
  std::vector<double> x, y;
  int dropped = 0;
  for (const auto& [model, score] : a) {
    auto it = b.find(model);
    if (it == b.end()) {
      ++dropped;
      continue;
    }
    x.push_back(score);
    y.push_back(it->second);
  }
  for (const auto& [model, score] : b)
    if (!a.count(model)) ++dropped;
  if (x.size() < 2)
    throw TooFewCommonModels("rankings share " + std::to_string(x.size()) +
                             " models; at least 2 are needed");
  CorrelationResult r;
  r.tau = kendall_tau_b(x, y);
  r.p_value = kendall_p_value(x, y);
  r.n_common = static_cast<int>(x.size());
  r.n_dropped = dropped;
  return r;
}

AliasMap read_alias_map(const std::filesystem::path& path) {
  try {
    return read_json_file(path).get<AliasMap>();
  } catch (const json::exception& e) {
    throw Error("alias map must be a JSON object of strings: " + std::string(e.what()));
  }
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

Ranking parse_ranking_csv(const std::string& contents, const AliasMap& aliases) {
  auto lines = text::split_lines(contents);
  size_t i = 0;
  while (i < lines.size() && text::trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw Error("ranking CSV is empty");
  std::string_view header = text::trim(lines[i++]);
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  const auto cols = split_csv_line(header);
  if (cols.size() < 2 || text::trim(cols[0]) != "model" || text::trim(cols[1]) != "score")
    throw Error("ranking CSV header must be 'model,score'");
  Ranking out;
  for (; i < lines.size(); ++i) {
    const std::string_view line = text::trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < 2) throw Error("ranking CSV row without score: " + std::string(line));
    std::string model(text::trim(fields[0]));
    if (auto it = aliases.find(model); it != aliases.end()) model = it->second;
    const std::string score_text(text::trim(fields[1]));
    char* end = nullptr;
    const double score = std::strtod(score_text.c_str(), &end);
    if (score_text.empty() || *end != '\0' || std::isnan(score))
      throw Error("ranking CSV score is not a number: " + score_text);
    if (!out.emplace(model, score).second)
      throw Error("ranking CSV lists model '" + model + "' twice");
  }
  return out;
}

Ranking read_ranking_csv(const std::filesystem::path& path, const AliasMap& aliases) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_ranking_csv(buf.str(), aliases);
}

}  // namespace playbench::metrics
