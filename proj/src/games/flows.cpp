#include "playbench/games/flows.hpp"

#include "playbench/errors.hpp"
#include "playbench/games/drawing.hpp"
#include "playbench/games/instances.hpp"
#include "playbench/games/pixel_grid.hpp"
#include "playbench/games/reference.hpp"
#include "playbench/games/taboo.hpp"
#include "playbench/games/wordle.hpp"
#include "playbench/text.hpp"

namespace playbench::games {

namespace {

constexpr Role A = Role::kPlayerA;
constexpr Role B = Role::kPlayerB;

json limit_reached() { return json{{"reason", "turn limit reached"}}; }

void play_taboo(Episode& ep) {
  const auto inst = TabooInstance::from_params(ep.instance().params);
  const LocalePack& pack = ep.pack();
  const auto clue_parser = parser_for(Flow::kTaboo, A, pack);
  const auto guess_parser = parser_for(Flow::kTaboo, B, pack);
  const std::string turns = std::to_string(ep.max_turns());

  std::string last_guess;
  for (int turn = 0; turn < ep.max_turns(); ++turn) {
    const std::string to_describer =
        turn == 0 ? ep.initial_prompt(A, {{"TARGET", inst.target_word},
                                          {"REL_WORDS", text::join(inst.related_words, ", ")},
                                          {"MAX_TURNS", turns}})
                  : ep.turn_prompt(A, {{"GUESS", last_guess}});
    auto clue = ep.exchange(A, turn, to_describer, clue_parser);
    if (!clue) return;

    const auto judgement = taboo_judge_clue(clue->raw, inst, pack);
    if (judgement.verdict == TabooJudgement::Verdict::kRuleViolation) {
      ep.rule_violation(A, turn, judgement.reason);
      ep.finish(Outcome::kLoss, turn, json{{"reason", judgement.reason}});
      return;
    }

    const std::string clue_text = clue->payload.at("clue").get<std::string>();
    const std::string to_guesser =
        turn == 0 ? ep.initial_prompt(B, {{"CLUE", clue_text}, {"MAX_TURNS", turns}})
                  : ep.turn_prompt(B, {{"CLUE", clue_text}});
    auto guess = ep.exchange(B, turn, to_guesser, guess_parser);
    if (!guess) return;
    last_guess = guess->payload.at("guess").get<std::string>();
    if (last_guess == inst.target_word) {
      ep.finish(Outcome::kSuccess, turn, json{{"rounds", turn + 1}});
      return;
    }
  }
  ep.finish(Outcome::kLoss, ep.max_turns() - 1, limit_reached());
}

// Plain wordle and the clue variant share one loop; the critic variant adds a
// proposal/verdict/commit cycle per attempt.
void play_wordle(Episode& ep, Flow flow) {
  const auto inst = WordleInstance::from_params(ep.instance().params);
  const LocalePack& pack = ep.pack();
  const auto guess_parser = parser_for(flow, A, pack);
  const bool with_critic = flow == Flow::kWordleCritic;
  const bool with_clue = flow != Flow::kWordle;
  if (with_clue && !inst.clue)
    throw InvalidInstance(std::string(to_string(flow)) + " instance needs a clue");

  TemplateParams first{{"N", std::to_string(kWordLength)},
                       {"MAX_TURNS", std::to_string(ep.max_turns())}};
  if (with_clue) first["CLUE"] = *inst.clue;

  std::string feedback;
  for (int turn = 0; turn < ep.max_turns(); ++turn) {
    const std::string prompt =
        turn == 0 ? ep.initial_prompt(A, first) : ep.turn_prompt(A, {{"FEEDBACK", feedback}});
    auto guess = ep.exchange(A, turn, prompt, guess_parser);
    if (!guess) return;

    if (with_critic) {
      const std::string proposal = guess->payload.at("word").get<std::string>();
      const std::string to_critic =
          turn == 0 ? ep.initial_prompt(B, {{"CLUE", *inst.clue}, {"GUESS", proposal}})
                    : ep.turn_prompt(B, {{"GUESS", proposal}});
      auto verdict = ep.exchange(B, turn, to_critic, parser_for(flow, B, pack));
      if (!verdict) return;
      const std::string relay =
          ep.extra_prompt("critic_relay", {{"CRITIC_RESPONSE", std::string(text::trim(verdict->raw))}});
      guess = ep.exchange(A, turn, relay, guess_parser);
      if (!guess) return;
    }

    const std::string word = guess->payload.at("word").get<std::string>();
    const WordleFeedback marks = wordle_feedback(word, inst.target_word);
    if (is_solved(marks)) {
      ep.finish(Outcome::kSuccess, turn, json{{"rounds", turn + 1}});
      return;
    }
    feedback = render_feedback(word, marks, pack);
  }
  ep.finish(Outcome::kLoss, ep.max_turns() - 1, limit_reached());
}

void play_reference(Episode& ep) {
  const auto inst = ReferenceInstance::from_params(ep.instance().params);
  const LocalePack& pack = ep.pack();
  const std::string& filled = pack.filled_cell_char;

  TemplateParams for_a;
  TemplateParams for_b;
  for (int i = 0; i < 3; ++i) {
    const std::string slot = "GRID" + std::to_string(i + 1);
    for_a[slot] = inst.grids[i].render(filled);
    for_b[slot] = inst.grid_for_b(i + 1).render(filled);
  }
  auto expression = ep.exchange(A, 0, ep.initial_prompt(A, for_a), parser_for(Flow::kReference, A, pack));
  if (!expression) return;
  for_b["EXPRESSION"] = expression->payload.at("expression").get<std::string>();
  auto answer = ep.exchange(B, 0, ep.initial_prompt(B, for_b), parser_for(Flow::kReference, B, pack));
  if (!answer) return;
  const int choice = answer->payload.at("choice").get<int>();
  ep.finish(choice == inst.correct_choice ? Outcome::kSuccess : Outcome::kLoss, 0,
            json{{"choice", choice}, {"correct_choice", inst.correct_choice}});
}

void play_drawing(Episode& ep) {
  const auto inst = DrawingInstance::from_params(ep.instance().params);
  const LocalePack& pack = ep.pack();
  const std::string& filled = pack.filled_cell_char;
  const auto instruction_parser = parser_for(Flow::kDrawing, A, pack);
  const auto grid_parser = parser_for(Flow::kDrawing, B, pack);

  PixelGrid drawn;
  auto done = [&](int turn, json detail) {
    detail["matches_target"] = drawn == inst.target_grid;
    ep.finish(drawn == inst.target_grid ? Outcome::kSuccess : Outcome::kLoss, turn,
              std::move(detail));
  };
  for (int turn = 0; turn < ep.max_turns(); ++turn) {
    const std::string prompt = turn == 0
                                   ? ep.initial_prompt(A, {{"TARGET_GRID", inst.target_grid.render(filled)}})
                                   : ep.turn_prompt(A, {{"GRID", drawn.render(filled)}});
    auto instruction = ep.exchange(A, turn, prompt, instruction_parser);
    if (!instruction) return;
    if (instruction->payload.at("done").get<bool>()) {
      done(turn, json::object());
      return;
    }
    const std::string text = instruction->payload.at("instruction").get<std::string>();
    const std::string to_drawer =
        turn == 0 ? ep.initial_prompt(B, {{"INSTRUCTION", text}, {"FILLED", filled}})
                  : ep.turn_prompt(B, {{"INSTRUCTION", text}, {"FILLED", filled}});
    auto grid = ep.exchange(B, turn, to_drawer, grid_parser);
    if (!grid) return;
    drawn = grid_from_json(grid->payload.at("grid"));
  }
  done(ep.max_turns() - 1, limit_reached());
}

}  // namespace

void play_flow(Episode& episode) {
  switch (episode.spec().flow) {
    case Flow::kTaboo: return play_taboo(episode);
    case Flow::kWordle:
    case Flow::kWordleClue:
    case Flow::kWordleCritic: return play_wordle(episode, episode.spec().flow);
    case Flow::kReference: return play_reference(episode);
    case Flow::kDrawing: return play_drawing(episode);
  }
}

ResponseParser parser_for(Flow flow, Role role, const LocalePack& pack) {
  const LocalePack* p = &pack;
  switch (flow) {
    case Flow::kTaboo:
      if (role == A) return [p](std::string_view s) { return parse_taboo_clue(s, *p); };
      if (role == B) return [p](std::string_view s) { return parse_taboo_guess(s, *p); };
      break;
    case Flow::kWordle:
    case Flow::kWordleClue:
      if (role == A) return [p](std::string_view s) { return parse_wordle_guess(s, *p); };
      break;
    case Flow::kWordleCritic:
      if (role == A) return [p](std::string_view s) { return parse_wordle_guess(s, *p); };
      if (role == B) return [p](std::string_view s) { return parse_critic_verdict(s, *p); };
      break;
    case Flow::kReference:
      if (role == A) return [p](std::string_view s) { return parse_reference_expression(s, *p); };
      if (role == B) return [p](std::string_view s) { return reference_parse_answer(s, *p); };
      break;
    case Flow::kDrawing:
      if (role == A) return [p](std::string_view s) { return parse_drawing_instruction(s, *p); };
      if (role == B) {
        const std::string filled = pack.filled_cell_char;
        return [filled](std::string_view s) { return drawing_turn_state(s, filled); };
      }
      break;
  }
  const std::string name(to_string(role));
  return [name](std::string_view) {
    return ParseResult::violation("role " + name + " does not speak in this game");
  };
}

std::vector<Role> flow_roles(Flow flow) {
  switch (flow) {
    case Flow::kWordle:
    case Flow::kWordleClue: return {A};
    default: return {A, B};
  }
}

int check_instance(Flow flow, const json& params, int spec_max_turns) {
  int turns = spec_max_turns;
  switch (flow) {
    case Flow::kTaboo: turns = TabooInstance::from_params(params).max_turns; break;
    case Flow::kWordle:
    case Flow::kWordleClue:
    case Flow::kWordleCritic: {
      const auto inst = WordleInstance::from_params(params);
      if (flow != Flow::kWordle && !inst.clue)
        throw InvalidInstance(std::string(to_string(flow)) + " instance needs a clue");
      turns = inst.max_turns;
      break;
    }
    case Flow::kReference: ReferenceInstance::from_params(params); break;
    case Flow::kDrawing: turns = DrawingInstance::from_params(params).max_turns; break;
  }
  if (!params.contains("max_turns")) turns = spec_max_turns;
  if (turns > spec_max_turns)
    throw InvalidInstance("instance max_turns " + std::to_string(turns) + " exceeds the game's " +
                          std::to_string(spec_max_turns));
  return turns;
}

}  // namespace playbench::games
