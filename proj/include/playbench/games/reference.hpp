#pragma once

#include <string_view>

#include "playbench/engine/types.hpp"

namespace playbench::games {

// "Expression: <text>". Payload {"expression": text}.
ParseResult parse_reference_expression(std::string_view response, const LocalePack& pack);

// "Answer: <ordinal word | 1 | 2 | 3>", case-insensitive, with the pack's
// answer prefix and ordinal words. Payload {"choice": 1..3}.
ParseResult reference_parse_answer(std::string_view response, const LocalePack& pack);

}  // namespace playbench::games
