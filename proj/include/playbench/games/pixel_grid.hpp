#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "playbench/engine/types.hpp"

namespace playbench::games {

inline constexpr std::string_view kEmptyCell = "▢";
inline constexpr std::string_view kCanonicalFilled = "X";

// 5x5 image of filled/empty cells, stored as a row-major bit mask.
class PixelGrid {
 public:
  static constexpr int kSize = 5;
  static constexpr uint32_t kFullMask = (1u << (kSize * kSize)) - 1;

  PixelGrid() = default;
  static PixelGrid from_mask(uint32_t mask) { return PixelGrid(mask & kFullMask); }

  // Rows of exactly five cells, each the empty cell or `filled`. Whitespace
  // between cells is ignored. Throws InvalidInstance.
  static PixelGrid from_rows(const std::vector<std::string>& rows,
                             std::string_view filled = kCanonicalFilled);

  bool filled(int row, int col) const { return mask_ >> (row * kSize + col) & 1u; }
  void set(int row, int col, bool value);
  void flip(int index) { mask_ ^= 1u << index; }

  uint32_t mask() const { return mask_; }
  int filled_count() const;
  bool empty() const { return mask_ == 0; }
  // Number of differing cells.
  int distance(const PixelGrid& other) const;

  // Compact rows such as "X▢▢X▢".
  std::vector<std::string> rows(std::string_view filled = kCanonicalFilled) const;
  // Prompt rendering: cells separated by spaces, rows by newlines.
  std::string render(std::string_view filled = kCanonicalFilled) const;

  bool operator==(const PixelGrid&) const = default;

 private:
  explicit PixelGrid(uint32_t mask) : mask_(mask) {}
  uint32_t mask_ = 0;
};

json grid_to_json(const PixelGrid& grid);
PixelGrid grid_from_json(const json& j);

// Parses a drawer's reply: five non-empty lines of five cells. Violations are
// values. Accepted payload: {"grid": [5 canonical rows]}.
ParseResult drawing_turn_state(std::string_view response, std::string_view filled = kCanonicalFilled);

// Precision/recall over filled-cell coordinates; 0 when nothing was drawn.
double grid_f1(const PixelGrid& target, const PixelGrid& drawn);

}  // namespace playbench::games
