#include "playbench/games/quality.hpp"

#include <algorithm>

#include "playbench/errors.hpp"
#include "playbench/games/instances.hpp"
#include "playbench/games/pixel_grid.hpp"

namespace playbench::games {

namespace {

const Event& terminal_event(const Transcript& t) {
  auto it = std::find_if(t.events.rbegin(), t.events.rend(),
                         [](const Event& e) { return e.kind == EventKind::kTerminal; });
  if (it == t.events.rend()) throw InvalidInstance("transcript has no terminal event");
  return *it;
}

// Payload of the last accepted reply from `role`.
const json* last_payload(const Transcript& t, Role role) {
  const Event* last = nullptr;
  for (size_t i = 0; i + 1 < t.events.size(); ++i)
    if (t.events[i].kind == EventKind::kReceiveResponse && t.events[i].actor == role &&
        t.events[i + 1].kind == EventKind::kParseOk)
      last = &t.events[i + 1];
  return last ? &last->content : nullptr;
}

}  // namespace

double episode_quality(Flow flow, const Transcript& t) {
  if (t.outcome == Outcome::kAborted)
    throw ScoringAbortedEpisode("episode " + t.meta.game + "/" + t.meta.experiment + "/" +
                                std::to_string(t.meta.instance_id) + " was aborted");
  switch (flow) {
    case Flow::kTaboo:
    case Flow::kWordle:
    case Flow::kWordleClue:
    case Flow::kWordleCritic: {
      if (t.outcome != Outcome::kSuccess) return 0.0;
      const int rounds = terminal_event(t).turn + 1;
      return 100.0 / rounds;
    }
    case Flow::kReference: {
      const auto inst = ReferenceInstance::from_params(t.meta.instance);
      const json* answer = last_payload(t, Role::kPlayerB);
      if (!answer) return 0.0;
      return answer->at("choice").get<int>() == inst.correct_choice ? 100.0 : 0.0;
    }
    case Flow::kDrawing: {
      const auto inst = DrawingInstance::from_params(t.meta.instance);
      const json* drawn = last_payload(t, Role::kPlayerB);
      const PixelGrid grid = drawn ? grid_from_json(drawn->at("grid")) : PixelGrid{};
      return 100.0 * grid_f1(inst.target_grid, grid);
    }
  }
  return 0.0;
}

}  // namespace playbench::games
