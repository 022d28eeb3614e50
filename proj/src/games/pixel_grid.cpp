#include "playbench/games/pixel_grid.hpp"

#include <bit>

#include "playbench/errors.hpp"
#include "playbench/text.hpp"

namespace playbench::games {

namespace {

// Reads one row; returns false with `why` set when it is not five known cells.
bool parse_row(std::string_view line, std::string_view filled, uint32_t& mask, int row,
               std::string& why) {
  int col = 0;
  for (const auto& ch : text::utf8_chars(line)) {
    if (ch == " " || ch == "\t") continue;
    if (col >= PixelGrid::kSize) {
      why = "row " + std::to_string(row + 1) + " has more than 5 cells";
      return false;
    }
    if (ch == filled) {
      mask |= 1u << (row * PixelGrid::kSize + col);
    } else if (ch != kEmptyCell) {
      why = "unknown cell character '" + ch + "' in row " + std::to_string(row + 1);
      return false;
    }
    ++col;
  }
  if (col != PixelGrid::kSize) {
    why = "row " + std::to_string(row + 1) + " has " + std::to_string(col) + " cells, expected 5";
    return false;
  }
  return true;
}

}  // namespace

PixelGrid PixelGrid::from_rows(const std::vector<std::string>& rows, std::string_view filled) {
  if (rows.size() != kSize)
    throw InvalidInstance("grid needs 5 rows, got " + std::to_string(rows.size()));
  uint32_t mask = 0;
  std::string why;
  for (int r = 0; r < kSize; ++r)
    if (!parse_row(rows[r], filled, mask, r, why)) throw InvalidInstance("bad grid: " + why);
  return PixelGrid(mask);
}

void PixelGrid::set(int row, int col, bool value) {
  const uint32_t bit = 1u << (row * kSize + col);
  mask_ = value ? (mask_ | bit) : (mask_ & ~bit);
}

int PixelGrid::filled_count() const { return std::popcount(mask_); }

int PixelGrid::distance(const PixelGrid& other) const { return std::popcount(mask_ ^ other.mask_); }

std::vector<std::string> PixelGrid::rows(std::string_view filled_char) const {
  std::vector<std::string> out;
  for (int r = 0; r < kSize; ++r) {
    std::string row;
    for (int c = 0; c < kSize; ++c) row += filled(r, c) ? filled_char : kEmptyCell;
    out.push_back(std::move(row));
  }
  return out;
}

std::string PixelGrid::render(std::string_view filled_char) const {
  std::string out;
  for (int r = 0; r < kSize; ++r) {
    if (r) out += '\n';
    for (int c = 0; c < kSize; ++c) {
      if (c) out += ' ';
      out += filled(r, c) ? filled_char : kEmptyCell;
    }
  }
  return out;
}

json grid_to_json(const PixelGrid& grid) { return grid.rows(); }

PixelGrid grid_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInstance("grid must be a list of 5 strings");
  return PixelGrid::from_rows(j.get<std::vector<std::string>>());
}

ParseResult drawing_turn_state(std::string_view response, std::string_view filled) {
  auto lines = text::split_lines(text::trim(response));
  if (lines.size() != PixelGrid::kSize)
    return ParseResult::violation("expected 5 grid lines, got " + std::to_string(lines.size()));
  uint32_t mask = 0;
  std::string why;
  for (int r = 0; r < PixelGrid::kSize; ++r) {
    if (text::trim(lines[r]).empty()) return ParseResult::violation("empty grid line");
    if (!parse_row(text::trim(lines[r]), filled, mask, r, why)) return ParseResult::violation(why);
  }
  return ParseResult::accepted(json{{"grid", grid_to_json(PixelGrid::from_mask(mask))}});
}

double grid_f1(const PixelGrid& target, const PixelGrid& drawn) {
  const int hits = std::popcount(target.mask() & drawn.mask());
  if (hits == 0) return 0.0;
  // Harmonic mean of hits/drawn and hits/target, in one division.
  return 2.0 * hits / (drawn.filled_count() + target.filled_count());
}

}  // namespace playbench::games
