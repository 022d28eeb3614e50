#pragma once

// Typed views of the per-game instance parameters. `from_params` validates
// and throws InvalidInstance; `to_params` is the instance-file form.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "playbench/engine/types.hpp"
#include "playbench/games/pixel_grid.hpp"

namespace playbench::games {

struct TabooInstance {
  std::string target_word;
  std::vector<std::string> related_words;
  int max_turns = 3;

  static TabooInstance from_params(const json& params);
  json to_params() const;
};

struct WordleInstance {
  std::string target_word;
  std::optional<std::string> clue;
  int max_turns = 6;

  static WordleInstance from_params(const json& params);
  json to_params() const;
};

struct ReferenceInstance {
  std::array<PixelGrid, 3> grids;   // target first
  std::array<int, 3> order_for_b{1, 2, 3};  // 1-based indices into `grids`
  int correct_choice = 1;           // position of the target in B's order

  static ReferenceInstance from_params(const json& params);
  json to_params() const;
  // Grid shown to player B at 1-based position `position`.
  const PixelGrid& grid_for_b(int position) const { return grids[order_for_b[position - 1] - 1]; }
};

struct DrawingInstance {
  PixelGrid target_grid;
  int max_turns = 20;

  static DrawingInstance from_params(const json& params);
  json to_params() const;
};

}  // namespace playbench::games
