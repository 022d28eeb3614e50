#include <gtest/gtest.h>

#include <random>
#include <set>

#include "playbench/errors.hpp"
#include "playbench/games/catalog.hpp"
#include "playbench/games/drawing.hpp"
#include "playbench/games/generators.hpp"
#include "playbench/games/pixel_grid.hpp"
#include "playbench/games/quality.hpp"
#include "playbench/games/reference.hpp"
#include "playbench/games/taboo.hpp"
#include "playbench/games/wordle.hpp"
#include "test_support.hpp"

namespace playbench::games {
namespace {

using namespace playbench::testing;
using M = Mark;

// ---- wordle ----

TEST(Wordle, RepeatedLettersInGuess) {
  const WordleFeedback expected{M::kInWord, M::kInWord, M::kCorrectPosition, M::kCorrectPosition, M::kAbsent};
  EXPECT_EQ(wordle_feedback("babes", "abbey"), expected);
}

TEST(Wordle, SolvedAndRejectsBadLength) {
  EXPECT_TRUE(is_solved(wordle_feedback("crane", "crane")));
  EXPECT_FALSE(is_solved(wordle_feedback("slate", "crane")));
  EXPECT_THROW(wordle_feedback("cran", "crane"), BadLength);
  EXPECT_THROW(wordle_feedback("crane", "cranes"), BadLength);
}

TEST(Wordle, SurplusCopiesAreAbsent) {
  const WordleFeedback expected{M::kCorrectPosition, M::kAbsent, M::kAbsent, M::kAbsent, M::kAbsent};
  EXPECT_EQ(wordle_feedback("eeeee", "ebcda").at(0), expected.at(0));
  EXPECT_EQ(wordle_feedback("eeeee", "ebcda"), expected);
}

TEST(Wordle, MatchesAssignmentOracleOnSample) {
  std::mt19937 rng(3);
  const std::string alphabet = "abcdef";
  for (int i = 0; i < 5000; ++i) {
    std::string g(5, 'a'), t(5, 'a');
    for (auto& c : g) c = alphabet[rng() % alphabet.size()];
    for (auto& c : t) c = alphabet[rng() % alphabet.size()];
    ASSERT_EQ(wordle_feedback(g, t), wordle_oracle(g, t)) << g << " vs " << t;
  }
}

// Per letter, green + yellow marks never exceed the target's count.
TEST(Wordle, MarkedCountsBoundedByTarget) {
  std::mt19937 rng(4);
  for (int i = 0; i < 5000; ++i) {
    std::string g(5, 'a'), t(5, 'a');
    for (auto& c : g) c = static_cast<char>('a' + rng() % 4);
    for (auto& c : t) c = static_cast<char>('a' + rng() % 4);
    const auto fb = wordle_feedback(g, t);
    for (char c = 'a'; c < 'e'; ++c) {
      int marked = 0;
      for (int k = 0; k < 5; ++k) marked += g[k] == c && fb[k] != M::kAbsent;
      EXPECT_LE(marked, std::count(t.begin(), t.end(), c));
    }
    EXPECT_TRUE(consistent_with(t, g, fb));
  }
}

TEST(Wordle, FeedbackRoundTripsThroughPrompt) {
  const LocalePack pack = english_pack(Flow::kWordle);
  const auto fb = wordle_feedback("slate", "crane");
  const std::string line = render_feedback("slate", fb, pack);
  const auto parsed = parse_feedback_lines(pack.keyword("feedback_prefix") + " " + line, pack);
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_EQ(parsed[0].first, "slate");
  EXPECT_EQ(parsed[0].second, fb);
}

TEST(Wordle, GuessParser) {
  const LocalePack pack = english_pack(Flow::kWordle);
  EXPECT_TRUE(parse_wordle_guess("guess: Crane\nbecause", pack).ok());
  EXPECT_FALSE(parse_wordle_guess("guess: cranes", pack).ok());
  EXPECT_FALSE(parse_wordle_guess("crane", pack).ok());
}

TEST(Wordle, CriticParser) {
  const LocalePack pack = english_pack(Flow::kWordleCritic);
  const auto ok = parse_critic_verdict("agreement: yes\nexplanation: fits the clue", pack);
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok.payload.at("agree"), true);
  EXPECT_FALSE(parse_critic_verdict("agreement: maybe\nexplanation: hm", pack).ok());
  EXPECT_FALSE(parse_critic_verdict("agreement: yes", pack).ok());
}

// ---- taboo ----

TEST(Taboo, ExactAndPrefixMatches) {
  const std::vector<std::string> forbidden{"fly", "wing", "airport"};
  EXPECT_EQ(find_taboo_violation("it can Fly!", forbidden), "fly");
  EXPECT_EQ(find_taboo_violation("flying high", forbidden), "fly");
  EXPECT_EQ(find_taboo_violation("wings spread", forbidden), "wing");
  EXPECT_EQ(find_taboo_violation("flying high", forbidden, true), std::nullopt);
  EXPECT_EQ(find_taboo_violation("a big metal bird", forbidden), std::nullopt);
  // Shorter side under three characters is not a prefix match.
  EXPECT_EQ(find_taboo_violation("an ai system", {"airport"}), std::nullopt);
}

TEST(Taboo, JudgeClue) {
  const LocalePack pack = english_pack(Flow::kTaboo);
  TabooInstance inst{"plane", {"fly", "wing", "airport"}};
  EXPECT_EQ(taboo_judge_clue("CLUE: a sky vehicle", inst, pack).verdict, TabooJudgement::Verdict::kAccepted);
  const auto bad = taboo_judge_clue("CLUE: it has wings", inst, pack);
  EXPECT_EQ(bad.verdict, TabooJudgement::Verdict::kRuleViolation);
  EXPECT_EQ(bad.word, "wing");
  EXPECT_EQ(taboo_judge_clue("a sky vehicle", inst, pack).verdict, TabooJudgement::Verdict::kFormatViolation);
}

TEST(Taboo, GuessParser) {
  const LocalePack pack = english_pack(Flow::kTaboo);
  const auto g = parse_taboo_guess("GUESS: Plane.", pack);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g.payload.at("guess"), "plane");
  EXPECT_FALSE(parse_taboo_guess("GUESS: two words", pack).ok());
}

// ---- grids ----

TEST(Grid, F1Example) {
  // Target 3 cells, drawn 2 of them: P = 1, R = 2/3, F1 = 0.8.
  EXPECT_DOUBLE_EQ(grid_f1(grid_of({0, 1, 2}), grid_of({0, 1})), 0.8);
  EXPECT_DOUBLE_EQ(grid_f1(grid_of({0, 1, 2}), grid_of({0, 1, 2})), 1.0);
  EXPECT_DOUBLE_EQ(grid_f1(grid_of({0}), PixelGrid{}), 0.0);
}

TEST(Grid, RenderParseRoundTrip) {
  std::mt19937 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto g = PixelGrid::from_mask(rng());
    for (std::string_view filled : {std::string_view("X"), std::string_view("■")}) {
      const auto parsed = drawing_turn_state(g.render(filled), filled);
      ASSERT_TRUE(parsed.ok()) << parsed.reason;
      EXPECT_EQ(grid_from_json(parsed.payload.at("grid")), g);
    }
  }
}

TEST(Grid, DrawerReplyViolations) {
  EXPECT_FALSE(drawing_turn_state("X X X X X").ok());
  EXPECT_FALSE(drawing_turn_state("X X X X\n▢ ▢ ▢ ▢ ▢\n▢ ▢ ▢ ▢ ▢\n▢ ▢ ▢ ▢ ▢\n▢ ▢ ▢ ▢ ▢").ok());
  EXPECT_FALSE(drawing_turn_state("X X X X Y\n▢ ▢ ▢ ▢ ▢\n▢ ▢ ▢ ▢ ▢\n▢ ▢ ▢ ▢ ▢\n▢ ▢ ▢ ▢ ▢").ok());
  EXPECT_TRUE(drawing_turn_state("XXXXX\n▢▢▢▢▢\n▢ ▢ ▢ ▢ ▢\n▢ ▢ ▢ ▢ ▢\n▢ ▢ ▢ ▢ ▢").ok());
}

TEST(Grid, DistanceCountsDifferingCells) {
  EXPECT_EQ(grid_of({0, 1}).distance(grid_of({1, 2})), 2);
  EXPECT_EQ(grid_of({}).distance(grid_of({})), 0);
}

// ---- generators ----

TEST(Generators, DeterministicInSeed) {
  const auto pool = read_word_pool(data_path("taboo_pool.txt"));
  for (const std::string game : {"taboo", "reference", "drawing"}) {
    const auto p = game == "taboo" ? std::optional(pool) : std::nullopt;
    EXPECT_EQ(to_json(generate_instances(game, 10, 42, p)), to_json(generate_instances(game, 10, 42, p)));
    EXPECT_NE(to_json(generate_instances(game, 10, 42, p)), to_json(generate_instances(game, 10, 43, p)));
  }
}

TEST(Generators, ReferenceDistractorsDifferByAtLeastTwoCells) {
  const auto file = generate_instances("reference", 200, 5);
  for (const auto& inst : file.instances) {
    const auto r = ReferenceInstance::from_params(inst.params);
    EXPECT_GE(r.grids[0].distance(r.grids[1]), 2);
    EXPECT_GE(r.grids[0].distance(r.grids[2]), 2);
    EXPECT_GE(r.grids[1].distance(r.grids[2]), 1);
    EXPECT_EQ(r.grid_for_b(r.correct_choice), r.grids[0]);
  }
}

TEST(Generators, UniqueIdsAndDistinctTargets) {
  const auto pool = read_word_pool(data_path("wordle_pool.txt"));
  const auto file = generate_instances("wordle", 30, 1, pool);
  std::set<int64_t> ids;
  std::set<std::string> targets;
  for (const auto& inst : file.instances) {
    ids.insert(inst.instance_id);
    targets.insert(WordleInstance::from_params(inst.params).target_word);
  }
  EXPECT_EQ(ids.size(), 30u);
  EXPECT_EQ(targets.size(), 30u);
}

TEST(Generators, SmallPoolThrows) {
  const auto pool = parse_word_pool("crane\nslate\n");
  EXPECT_THROW(generate_instances("wordle", 3, 1, pool), PoolTooSmall);
  EXPECT_THROW(generate_instances("taboo", 1, 1, std::nullopt), PlanError);
}

TEST(Generators, UnknownGame) { EXPECT_THROW(generate_instances("chess", 3, 1), UnknownGame); }

// ---- catalog ----

TEST(Catalog, BuiltinGamesAndValidation) {
  const auto catalog = GameCatalog::builtin();
  EXPECT_TRUE(catalog.contains("taboo"));
  EXPECT_THROW(catalog.find("chess"), UnknownGame);
  for (const auto& name : catalog.names()) {
    const Flow flow = parse_flow(name);
    EXPECT_NO_THROW(validate_locale_pack(flow, english_pack(flow))) << name;
    EXPECT_NO_THROW(validate_locale_pack(flow, pseudo_pack(english_pack(flow)))) << name;
  }
  LocalePack broken = english_pack(Flow::kTaboo);
  broken.initial_prompts[Role::kPlayerA] = "no placeholders";
  EXPECT_THROW(validate_locale_pack(Flow::kTaboo, broken), InvalidGameSpec);
}

// ---- quality ----

TEST(Quality, AbortedEpisodeHasNoQuality) {
  const auto t = play_scripted(wordle_instance("crane"), {{Role::kPlayerA, {"nope"}}});
  EXPECT_THROW(episode_quality(Flow::kWordle, t), ScoringAbortedEpisode);
}

TEST(Quality, WordleRounds) {
  const auto t = play_scripted(wordle_instance("crane"), {{Role::kPlayerA, {"guess: slate", "guess: crane"}}});
  EXPECT_EQ(t.outcome, Outcome::kSuccess);
  EXPECT_DOUBLE_EQ(episode_quality(Flow::kWordle, t), 50.0);
}

TEST(Quality, DrawingUsesFinalGrid) {
  const auto target = grid_of({0, 1, 2});
  const auto t = play_scripted(drawing_instance(target),
                               {{Role::kPlayerA, {"Instruction: top row, first three", "Instruction: DONE"}},
                                {Role::kPlayerB, {PixelGrid(grid_of({0, 1})).render()}}});
  // An inexact drawing is a Loss that still earns partial quality.
  EXPECT_EQ(t.outcome, Outcome::kLoss);
  EXPECT_NEAR(episode_quality(Flow::kDrawing, t), 80.0, 1e-9);
}

}  // namespace
}  // namespace playbench::games
