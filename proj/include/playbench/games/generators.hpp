#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "playbench/engine/serialization.hpp"
#include "playbench/games/pixel_grid.hpp"
#include "playbench/random.hpp"

namespace playbench::games {

// One usable line of a word pool. `extras` carries what follows a tab:
// comma-separated related words for taboo, the clue for the wordle variants.
struct PoolEntry {
  std::string word;
  std::string extras;
};

using WordPool = std::vector<PoolEntry>;

// Newline-delimited UTF-8 words; blank lines and '#' comments are skipped.
WordPool read_word_pool(const std::filesystem::path& path);
WordPool parse_word_pool(std::string_view contents);

struct GeneratorOptions {
  std::string experiment = "default";
  int64_t first_id = 0;
};

// Deterministic in (game, n, seed, pool). Word games need a pool with at
// least `n` eligible entries (PoolTooSmall otherwise); grid games ignore it.
InstanceFile generate_instances(std::string_view game, int n, uint64_t seed,
                                const std::optional<WordPool>& pool = std::nullopt,
                                const GeneratorOptions& options = {});

// Random grid with at least one filled cell.
PixelGrid random_grid(Rng& rng, double fill_probability = 0.4);

// Flips 2..6 distinct cells of `grid`.
PixelGrid mutate_grid(const PixelGrid& grid, Rng& rng);

}  // namespace playbench::games
