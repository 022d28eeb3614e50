#include "playbench/games/wordle.hpp"

#include <algorithm>

#include "playbench/errors.hpp"
#include "playbench/text.hpp"

namespace playbench::games {

bool is_wordle_word(std::string_view word) {
  return word.size() == kWordLength &&
         std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

WordleFeedback wordle_feedback(std::string_view guess, std::string_view target) {
  if (!is_wordle_word(guess) || !is_wordle_word(target))
    throw BadLength("wordle words must be 5 lowercase letters: '" + std::string(guess) + "', '" +
                    std::string(target) + "'");
  WordleFeedback marks{};
  int remaining[26] = {};
  for (int i = 0; i < kWordLength; ++i) {
    if (guess[i] == target[i])
      marks[i] = Mark::kCorrectPosition;
    else
      ++remaining[target[i] - 'a'];
  }
  for (int i = 0; i < kWordLength; ++i) {
    if (marks[i] == Mark::kCorrectPosition) continue;
    int& left = remaining[guess[i] - 'a'];
    if (left > 0) {
      marks[i] = Mark::kInWord;
      --left;
    } else {
      marks[i] = Mark::kAbsent;
    }
  }
  return marks;
}

bool is_solved(const WordleFeedback& feedback) {
  return std::all_of(feedback.begin(), feedback.end(),
                     [](Mark m) { return m == Mark::kCorrectPosition; });
}

bool consistent_with(std::string_view candidate, std::string_view guess,
                     const WordleFeedback& feedback) {
  return wordle_feedback(guess, candidate) == feedback;
}

namespace {

const std::string& mark_keyword(Mark m, const LocalePack& pack) {
  switch (m) {
    case Mark::kCorrectPosition: return pack.keyword("mark_correct");
    case Mark::kInWord: return pack.keyword("mark_present");
    case Mark::kAbsent: break;
  }
  return pack.keyword("mark_absent");
}

}  // namespace

std::string render_feedback(std::string_view guess, const WordleFeedback& feedback,
                            const LocalePack& pack) {
  std::string out;
  for (int i = 0; i < kWordLength; ++i) {
    if (i) out += ' ';
    out += guess[i];
    out += '<';
    out += mark_keyword(feedback[i], pack);
    out += '>';
  }
  return out;
}

std::vector<std::pair<std::string, WordleFeedback>> parse_feedback_lines(std::string_view prompt,
                                                                         const LocalePack& pack) {
  const std::string& prefix = pack.keyword("feedback_prefix");
  std::vector<std::pair<std::string, WordleFeedback>> out;
  for (auto line : text::split_lines(prompt)) {
    line = text::trim(line);
    if (!text::istarts_with(line, prefix)) continue;
    auto tokens = text::split_whitespace(line.substr(prefix.size()));
    if (tokens.size() != kWordLength) continue;
    std::string word;
    WordleFeedback fb{};
    bool ok = true;
    for (int i = 0; i < kWordLength && ok; ++i) {
      std::string_view tok = tokens[i];
      if (tok.size() < 4 || tok[1] != '<' || tok.back() != '>') {
        ok = false;
        break;
      }
      word += tok[0];
      std::string_view mark = tok.substr(2, tok.size() - 3);
      if (mark == pack.keyword("mark_correct"))
        fb[i] = Mark::kCorrectPosition;
      else if (mark == pack.keyword("mark_present"))
        fb[i] = Mark::kInWord;
      else if (mark == pack.keyword("mark_absent"))
        fb[i] = Mark::kAbsent;
      else
        ok = false;
    }
    if (ok && is_wordle_word(word)) out.emplace_back(word, fb);
  }
  return out;
}

ParseResult parse_wordle_guess(std::string_view response, const LocalePack& pack) {
  const std::string& prefix = pack.keyword("guess_prefix");
  const auto lines = text::split_lines(text::trim(response));
  const std::string_view first = text::trim(lines.front());
  if (!text::istarts_with(first, prefix)) return ParseResult::violation("missing guess prefix");
  const std::string word = text::to_lower(text::trim(first.substr(prefix.size())));
  if (!is_wordle_word(word))
    return ParseResult::violation("guess must be a single 5-letter word");
  return ParseResult::accepted(json{{"word", word}});
}

ParseResult parse_critic_verdict(std::string_view response, const LocalePack& pack) {
  const auto lines = text::split_lines(text::trim(response));
  if (lines.size() != 2) return ParseResult::violation("critic reply must have exactly two lines");
  const std::string_view agreement = text::trim(lines[0]);
  const std::string_view explanation = text::trim(lines[1]);
  const std::string& agree_prefix = pack.keyword("agreement_prefix");
  const std::string& expl_prefix = pack.keyword("explanation_prefix");
  if (!text::istarts_with(agreement, agree_prefix))
    return ParseResult::violation("missing agreement prefix");
  if (!text::istarts_with(explanation, expl_prefix))
    return ParseResult::violation("missing explanation prefix");
  const std::string_view verdict = text::trim(agreement.substr(agree_prefix.size()));
  bool agree;
  if (text::iequals(verdict, pack.keyword("yes")))
    agree = true;
  else if (text::iequals(verdict, pack.keyword("no")))
    agree = false;
  else
    return ParseResult::violation("agreement must be '" + pack.keyword("yes") + "' or '" +
                                  pack.keyword("no") + "'");
  return ParseResult::accepted(
      json{{"agree", agree},
           {"explanation", std::string(text::trim(explanation.substr(expl_prefix.size())))}});
}

}  // namespace playbench::games
