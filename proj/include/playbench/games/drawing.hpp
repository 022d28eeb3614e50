#pragma once

#include <string_view>

#include "playbench/engine/types.hpp"

namespace playbench::games {

// "Instruction: <text>"; the pack's terminal token (en: DONE) ends the game.
// Payload {"instruction": text, "done": bool}.
ParseResult parse_drawing_instruction(std::string_view response, const LocalePack& pack);

}  // namespace playbench::games
