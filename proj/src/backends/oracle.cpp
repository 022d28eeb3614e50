#include "playbench/backends/oracle.hpp"

#include <algorithm>

#include "playbench/errors.hpp"

namespace playbench {

std::vector<std::string> wordle_candidates(std::span<const std::string> pool,
                                           const FeedbackHistory& feedback) {
  std::vector<std::string> out;
  for (const auto& word : pool) {
    if (!games::is_wordle_word(word)) continue;
    bool ok = true;
    for (const auto& [guess, marks] : feedback) {
      if (!games::consistent_with(word, guess, marks)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(word);
  }
  return out;
}

std::string oracle_wordle(std::span<const std::string> pool, const FeedbackHistory& feedback,
                          const LocalePack& pack) {
  const auto candidates = wordle_candidates(pool, feedback);
  if (candidates.empty())
    throw EmptyCandidateSet("no pool word is consistent with " + std::to_string(feedback.size()) +
                            " feedback line(s)");
  return pack.keyword("guess_prefix") + " " + *std::min_element(candidates.begin(), candidates.end());
}

FeedbackHistory feedback_from_history(std::span<const Message> history, const LocalePack& pack) {
  FeedbackHistory out;
  for (const auto& m : history) {
    if (m.role != MessageRole::kUser) continue;
    for (auto& entry : games::parse_feedback_lines(m.content, pack)) out.push_back(std::move(entry));
  }
  return out;
}

OracleWordlePlayer::OracleWordlePlayer(std::string model_id, std::vector<std::string> pool,
                                       const LocalePack& pack)
    : model_id_(std::move(model_id)), pool_(std::move(pool)), pack_(pack) {}

std::string OracleWordlePlayer::respond(std::span<const Message> history) {
  return oracle_wordle(pool_, feedback_from_history(history, pack_), pack_);
}

}  // namespace playbench
