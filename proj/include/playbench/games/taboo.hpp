#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "playbench/engine/types.hpp"
#include "playbench/games/instances.hpp"

namespace playbench::games {

struct TabooJudgement {
  enum class Verdict { kAccepted, kFormatViolation, kRuleViolation };

  Verdict verdict = Verdict::kFormatViolation;
  std::string clue;       // accepted clue text, prefix removed
  std::string word;       // offending forbidden word on rule violation
  std::string reason;
};

// "CLUE: <one line>" with the pack's clue prefix. Payload {"clue": text}.
ParseResult parse_taboo_clue(std::string_view response, const LocalePack& pack);

// "GUESS: <word>" with the pack's guess prefix. Payload {"guess": lowercase word}.
ParseResult parse_taboo_guess(std::string_view response, const LocalePack& pack);

// First forbidden word matched by a clue token. Tokens are split on
// whitespace, case-folded and stripped of edge punctuation. A token t matches
// a forbidden word w when t == w, or, unless `exact_only`, when one is a
// prefix of the other and the shorter has at least 3 characters.
std::optional<std::string> find_taboo_violation(std::string_view clue,
                                                const std::vector<std::string>& forbidden,
                                                bool exact_only = false);

TabooJudgement taboo_judge_clue(std::string_view clue_text, const TabooInstance& instance,
                                const LocalePack& pack);

}  // namespace playbench::games
