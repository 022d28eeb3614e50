#include "playbench/games/reference.hpp"

#include "playbench/text.hpp"

namespace playbench::games {

ParseResult parse_reference_expression(std::string_view response, const LocalePack& pack) {
  const std::string& prefix = pack.keyword("expression_prefix");
  const std::string_view body = text::trim(response);
  if (!text::istarts_with(body, prefix)) return ParseResult::violation("missing expression prefix");
  const std::string_view expression = text::trim(body.substr(prefix.size()));
  if (expression.empty()) return ParseResult::violation("empty expression");
  return ParseResult::accepted(json{{"expression", std::string(expression)}});
}

ParseResult reference_parse_answer(std::string_view response, const LocalePack& pack) {
  const std::string& prefix = pack.keyword("answer_prefix");
  const std::string_view body = text::trim(response);
  if (!text::istarts_with(body, prefix)) return ParseResult::violation("missing answer prefix");
  std::string_view answer = text::trim(body.substr(prefix.size()));
  // A trailing full stop is tolerated; anything else is not.
  if (!answer.empty() && answer.back() == '.') answer.remove_suffix(1);
  answer = text::trim(answer);
  static constexpr const char* kOrdinals[] = {"ordinal_1", "ordinal_2", "ordinal_3"};
  for (int choice = 1; choice <= 3; ++choice) {
    if (answer == std::to_string(choice) || text::iequals(answer, pack.keyword(kOrdinals[choice - 1])))
      return ParseResult::accepted(json{{"choice", choice}});
  }
  return ParseResult::violation("answer must name the first, second or third image");
}

}  // namespace playbench::games
