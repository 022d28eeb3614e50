#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "playbench/engine/types.hpp"

namespace playbench::games {

inline constexpr int kWordLength = 5;

enum class Mark : uint8_t { kAbsent, kInWord, kCorrectPosition };

using WordleFeedback = std::array<Mark, kWordLength>;

// Standard two-pass scoring: exact matches first, then remaining letters are
// matched left to right against the unconsumed target letters. Both words
// must be 5 lowercase letters, else BadLength.
WordleFeedback wordle_feedback(std::string_view guess, std::string_view target);

bool is_solved(const WordleFeedback& feedback);

// Would `candidate` as the target have produced `feedback` for `guess`?
bool consistent_with(std::string_view candidate, std::string_view guess,
                     const WordleFeedback& feedback);

// "c<green> r<yellow> a<red> ..." using the pack's mark keywords.
std::string render_feedback(std::string_view guess, const WordleFeedback& feedback,
                            const LocalePack& pack);

// Extracts every feedback line (prefixed with the pack's feedback keyword)
// from a prompt, in order of appearance.
std::vector<std::pair<std::string, WordleFeedback>> parse_feedback_lines(std::string_view prompt,
                                                                         const LocalePack& pack);

// "guess: <word>" on the first line; the word must be five letters.
// Payload {"word": lowercase word}.
ParseResult parse_wordle_guess(std::string_view response, const LocalePack& pack);

// Critic reply: "agreement: yes|no" then "explanation: ...".
// Payload {"agree": bool, "explanation": text}.
ParseResult parse_critic_verdict(std::string_view response, const LocalePack& pack);

bool is_wordle_word(std::string_view word);

}  // namespace playbench::games
