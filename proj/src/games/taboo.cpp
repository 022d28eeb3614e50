#include "playbench/games/taboo.hpp"

#include <algorithm>

#include "playbench/text.hpp"

namespace playbench::games {

namespace {

constexpr size_t kMinPrefixOverlap = 3;

bool token_matches(std::string_view token, std::string_view word, bool exact_only) {
  if (token == word) return true;
  if (exact_only || std::min(token.size(), word.size()) < kMinPrefixOverlap) return false;
  return token.starts_with(word) || word.starts_with(token);
}

}  // namespace

ParseResult parse_taboo_clue(std::string_view response, const LocalePack& pack) {
  const std::string& prefix = pack.keyword("clue_prefix");
  const std::string_view body = text::trim(response);
  if (!text::istarts_with(body, prefix)) return ParseResult::violation("missing clue prefix");
  const std::string_view clue = text::trim(body.substr(prefix.size()));
  if (clue.empty()) return ParseResult::violation("empty clue");
  if (clue.find('\n') != std::string_view::npos)
    return ParseResult::violation("clue must be a single line");
  return ParseResult::accepted(json{{"clue", std::string(clue)}});
}

ParseResult parse_taboo_guess(std::string_view response, const LocalePack& pack) {
  const std::string& prefix = pack.keyword("guess_prefix");
  const std::string_view body = text::trim(response);
  if (!text::istarts_with(body, prefix)) return ParseResult::violation("missing guess prefix");
  const auto tokens = text::split_whitespace(body.substr(prefix.size()));
  if (tokens.size() != 1) return ParseResult::violation("guess must be a single word");
  const std::string word = text::to_lower(text::strip_punct(tokens.front()));
  if (word.empty()) return ParseResult::violation("guess must be a single word");
  return ParseResult::accepted(json{{"guess", word}});
}

std::optional<std::string> find_taboo_violation(std::string_view clue,
                                                const std::vector<std::string>& forbidden,
                                                bool exact_only) {
  for (auto raw : text::split_whitespace(clue)) {
    const std::string token = text::to_lower(text::strip_punct(raw));
    if (token.empty()) continue;
    for (const auto& word : forbidden)
      if (token_matches(token, text::to_lower(word), exact_only)) return word;
  }
  return std::nullopt;
}

TabooJudgement taboo_judge_clue(std::string_view clue_text, const TabooInstance& instance,
                                const LocalePack& pack) {
  TabooJudgement j;
  ParseResult parsed = parse_taboo_clue(clue_text, pack);
  if (!parsed.ok()) {
    j.verdict = TabooJudgement::Verdict::kFormatViolation;
    j.reason = parsed.reason;
    return j;
  }
  j.clue = parsed.payload.at("clue").get<std::string>();
  std::vector<std::string> forbidden{instance.target_word};
  forbidden.insert(forbidden.end(), instance.related_words.begin(), instance.related_words.end());
  auto it = pack.keywords.find("taboo_matching");
  const bool exact_only = it != pack.keywords.end() && it->second == "exact";
  if (auto word = find_taboo_violation(j.clue, forbidden, exact_only)) {
    j.verdict = TabooJudgement::Verdict::kRuleViolation;
    j.word = *word;
    j.reason = "clue uses forbidden word '" + *word + "'";
    return j;
  }
  j.verdict = TabooJudgement::Verdict::kAccepted;
  return j;
}

}  // namespace playbench::games
