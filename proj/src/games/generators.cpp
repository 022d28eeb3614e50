#include "playbench/games/generators.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "playbench/errors.hpp"
#include "playbench/games/instances.hpp"
#include "playbench/games/wordle.hpp"
#include "playbench/text.hpp"

namespace playbench::games {

namespace fs = std::filesystem;

WordPool parse_word_pool(std::string_view contents) {
  WordPool pool;
  std::set<std::string> seen;
  for (auto line : text::split_lines(contents)) {
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    PoolEntry entry;
    const size_t tab = line.find('\t');
    entry.word = text::to_lower(text::trim(line.substr(0, tab)));
    if (tab != std::string_view::npos) entry.extras = std::string(text::trim(line.substr(tab + 1)));
    if (seen.insert(entry.word).second) pool.push_back(std::move(entry));
  }
  return pool;
}

WordPool read_word_pool(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open word pool " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_word_pool(buf.str());
}

PixelGrid random_grid(Rng& rng, double fill_probability) {
  PixelGrid grid;
  do {
    uint32_t mask = 0;
    for (int i = 0; i < PixelGrid::kSize * PixelGrid::kSize; ++i)
      if (rng.unit() < fill_probability) mask |= 1u << i;
    grid = PixelGrid::from_mask(mask);
  } while (grid.empty());
  return grid;
}

PixelGrid mutate_grid(const PixelGrid& grid, Rng& rng) {
  std::array<int, 25> cells{};
  std::iota(cells.begin(), cells.end(), 0);
  rng.shuffle(std::span<int>(cells));
  const int flips = static_cast<int>(rng.between(2, 6));
  PixelGrid out = grid;
  for (int i = 0; i < flips; ++i) out.flip(cells[i]);
  return out;
}

namespace {

bool is_taboo_token(const std::string& w) {
  return !w.empty() && std::none_of(w.begin(), w.end(), [](char c) {
    return c == ' ' || c == '\t' || (c >= 'A' && c <= 'Z');
  });
}

std::vector<std::string> split_related(const std::string& extras) {
  std::vector<std::string> out;
  std::string_view rest = extras;
  while (!rest.empty()) {
    const size_t comma = rest.find(',');
    const auto part = text::to_lower(text::trim(rest.substr(0, comma)));
    if (!part.empty()) out.push_back(part);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<size_t> pick(size_t eligible, int n, Rng& rng, std::string_view game) {
  if (n < 0) throw PlanError("instance count must be non-negative");
  if (static_cast<size_t>(n) > eligible)
    throw PoolTooSmall("word pool has " + std::to_string(eligible) + " eligible words for " +
                       std::string(game) + ", " + std::to_string(n) + " requested");
  std::vector<size_t> idx(eligible);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(std::span<size_t>(idx));
  idx.resize(static_cast<size_t>(n));
  return idx;
}

const WordPool& require_pool(const std::optional<WordPool>& pool, std::string_view game) {
  if (!pool) throw PlanError(std::string(game) + " needs a word pool");
  return *pool;
}

std::vector<json> taboo_params(int n, Rng& rng, const WordPool& pool) {
  std::vector<const PoolEntry*> eligible;
  for (const auto& e : pool)
    if (is_taboo_token(e.word)) eligible.push_back(&e);
  std::vector<json> out;
  for (size_t i : pick(eligible.size(), n, rng, "taboo")) {
    const PoolEntry& entry = *eligible[i];
    TabooInstance inst;
    inst.target_word = entry.word;
    inst.related_words = split_related(entry.extras);
    if (inst.related_words.empty()) {
      // No curated relations: forbid three other pool words instead.
      if (eligible.size() < 4)
        throw PoolTooSmall("taboo pool needs at least 4 words to draw related words");
      while (inst.related_words.size() < 3) {
        const auto& other = eligible[rng.index(eligible.size())]->word;
        if (other != inst.target_word &&
            std::find(inst.related_words.begin(), inst.related_words.end(), other) ==
                inst.related_words.end())
          inst.related_words.push_back(other);
      }
    }
    out.push_back(TabooInstance::from_params(inst.to_params()).to_params());
  }
  return out;
}

std::vector<json> wordle_params(Flow flow, int n, Rng& rng, const WordPool& pool) {
  const bool needs_clue = flow != Flow::kWordle;
  std::vector<const PoolEntry*> eligible;
  for (const auto& e : pool)
    if (is_wordle_word(e.word) && (!needs_clue || !e.extras.empty())) eligible.push_back(&e);
  std::vector<json> out;
  for (size_t i : pick(eligible.size(), n, rng, to_string(flow))) {
    WordleInstance inst;
    inst.target_word = eligible[i]->word;
    if (needs_clue) inst.clue = eligible[i]->extras;
    out.push_back(inst.to_params());
  }
  return out;
}

json reference_params(Rng& rng) {
  ReferenceInstance inst;
  inst.grids[0] = random_grid(rng);
  for (int k = 1; k < 3; ++k) {
    PixelGrid candidate;
    bool far_enough;
    do {
      candidate = mutate_grid(inst.grids[0], rng);
      far_enough = true;
      for (int j = 0; j < k; ++j) far_enough = far_enough && candidate.distance(inst.grids[j]) >= 2;
    } while (!far_enough);
    inst.grids[k] = candidate;
  }
  rng.shuffle(std::span<int>(inst.order_for_b));
  inst.correct_choice =
      static_cast<int>(std::find(inst.order_for_b.begin(), inst.order_for_b.end(), 1) -
                       inst.order_for_b.begin()) + 1;
  return inst.to_params();
}

}  // namespace

InstanceFile generate_instances(std::string_view game, int n, uint64_t seed,
                                const std::optional<WordPool>& pool,
                                const GeneratorOptions& options) {
  const Flow flow = [&] {
    try {
      return parse_flow(game);
    } catch (const Error&) {
      throw UnknownGame("no instance generator for game '" + std::string(game) + "'");
    }
  }();
  if (n < 0) throw PlanError("instance count must be non-negative");
  Rng rng(splitmix64(seed ^ fnv1a64(game)));

  std::vector<json> params;
  switch (flow) {
    case Flow::kTaboo: params = taboo_params(n, rng, require_pool(pool, game)); break;
    case Flow::kWordle:
    case Flow::kWordleClue:
    case Flow::kWordleCritic: params = wordle_params(flow, n, rng, require_pool(pool, game)); break;
    case Flow::kReference:
      for (int i = 0; i < n; ++i) params.push_back(reference_params(rng));
      break;
    case Flow::kDrawing:
      for (int i = 0; i < n; ++i) params.push_back(DrawingInstance{random_grid(rng)}.to_params());
      break;
  }

  InstanceFile file;
  file.game = std::string(game);
  for (size_t i = 0; i < params.size(); ++i) {
    GameInstance inst;
    inst.game_name = file.game;
    inst.experiment_name = options.experiment;
    inst.instance_id = options.first_id + static_cast<int64_t>(i);
    inst.params = std::move(params[i]);
    file.instances.push_back(std::move(inst));
  }
  return file;
}

}  // namespace playbench::games
