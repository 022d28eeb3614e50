#pragma once

#include "playbench/engine/types.hpp"

namespace playbench::games {

// Main metric of one episode, in [0, 100]:
//   wordle variants, taboo: 100 / rounds on Success, 0 on Loss
//   reference:              100 if B picked the target, else 0
//   drawing:                100 * F1 of the final drawn grid vs. the target
// Throws ScoringAbortedEpisode for Aborted transcripts.
double episode_quality(Flow flow, const Transcript& transcript);

}  // namespace playbench::games
