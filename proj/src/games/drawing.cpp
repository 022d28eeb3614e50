#include "playbench/games/drawing.hpp"

#include "playbench/text.hpp"

namespace playbench::games {

ParseResult parse_drawing_instruction(std::string_view response, const LocalePack& pack) {
  const std::string& prefix = pack.keyword("instruction_prefix");
  const std::string_view body = text::trim(response);
  if (!text::istarts_with(body, prefix))
    return ParseResult::violation("missing instruction prefix");
  const std::string_view instruction = text::trim(body.substr(prefix.size()));
  if (instruction.empty()) return ParseResult::violation("empty instruction");
  const bool done = instruction == pack.keyword("done");
  return ParseResult::accepted(json{{"instruction", std::string(instruction)}, {"done", done}});
}

}  // namespace playbench::games
