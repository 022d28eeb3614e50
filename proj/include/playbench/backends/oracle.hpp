#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "playbench/backends/player.hpp"
#include "playbench/engine/types.hpp"
#include "playbench/games/wordle.hpp"

namespace playbench {

using FeedbackHistory = std::vector<std::pair<std::string, games::WordleFeedback>>;

// Pool words consistent with every (guess, feedback) pair, in pool order.
std::vector<std::string> wordle_candidates(std::span<const std::string> pool,
                                           const FeedbackHistory& feedback);

// Reply line "<guess keyword> <word>" for the lexicographically smallest
// consistent candidate. Throws EmptyCandidateSet.
std::string oracle_wordle(std::span<const std::string> pool, const FeedbackHistory& feedback,
                          const LocalePack& pack);

// Collects the feedback lines of every prompt in the history.
FeedbackHistory feedback_from_history(std::span<const Message> history, const LocalePack& pack);

class OracleWordlePlayer : public Player {
 public:
  OracleWordlePlayer(std::string model_id, std::vector<std::string> pool, const LocalePack& pack);
  std::string model_id() const override { return model_id_; }
  std::string respond(std::span<const Message> history) override;

 private:
  std::string model_id_;
  std::vector<std::string> pool_;
  const LocalePack& pack_;
};

}  // namespace playbench
