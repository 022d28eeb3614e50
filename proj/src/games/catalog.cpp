#include "playbench/games/catalog.hpp"

#include <algorithm>

#include "playbench/engine/serialization.hpp"
#include "playbench/engine/template.hpp"
#include "playbench/errors.hpp"
#include "playbench/games/flows.hpp"
#include "playbench/text.hpp"

namespace playbench::games {

namespace fs = std::filesystem;

namespace {

constexpr Role A = Role::kPlayerA;
constexpr Role B = Role::kPlayerB;

LocalePack taboo_en() {
  LocalePack p;
  p.language = "en";
  p.initial_prompts[A] =
      "You are playing a describing game. Make your partner guess the target word "
      "\"$TARGET$\" without using it or any of these related words: $REL_WORDS$. Words that "
      "begin like any of them count as used too.\n"
      "Your partner has $MAX_TURNS$ guesses. Start every reply with \"CLUE:\" followed by a "
      "one-line clue, like this:\n"
      "CLUE: <your clue>\n"
      "Give your first clue now.";
  p.turn_prompts[A] =
      "Your partner guessed \"$GUESS$\", which is not the target word. Give another clue.\n"
      "CLUE: <your clue>";
  p.initial_prompts[B] =
      "You are playing a guessing game. Your partner describes one English word and you have "
      "$MAX_TURNS$ guesses to find it. Reply with exactly one line that starts with \"GUESS:\" "
      "followed by a single word, like this:\n"
      "GUESS: <word>\n"
      "The first clue is: $CLUE$";
  p.turn_prompts[B] = "That is not the word. The next clue is: $CLUE$";
  p.keywords = {{"clue_prefix", "CLUE:"}, {"guess_prefix", "GUESS:"}, {"taboo_matching", "prefix"}};
  return p;
}

constexpr const char* kWordleRules =
    "Let's play Wordle. Find the secret $N$-letter English word in at most $MAX_TURNS$ "
    "attempts. After every attempt you get feedback for each letter: <green> means the letter "
    "is in the word at this position, <yellow> means it is in the word at another position, "
    "<red> means it is not in the word.\n";

std::map<std::string, std::string> wordle_keywords() {
  return {{"guess_prefix", "guess:"},
          {"feedback_prefix", "guess_feedback:"},
          {"mark_correct", "green"},
          {"mark_present", "yellow"},
          {"mark_absent", "red"}};
}

LocalePack wordle_en(bool with_clue) {
  LocalePack p;
  p.language = "en";
  p.initial_prompts[A] = std::string(kWordleRules) + (with_clue ? "Clue: $CLUE$\n" : "") +
                         "Reply with one line of the form\n"
                         "guess: <word>\n"
                         "Make your first guess.";
  p.turn_prompts[A] =
      "guess_feedback: $FEEDBACK$\n"
      "Make your next guess.\n"
      "guess: <word>";
  p.keywords = wordle_keywords();
  return p;
}

LocalePack wordle_critic_en() {
  LocalePack p;
  p.language = "en";
  p.initial_prompts[A] = std::string(kWordleRules) +
                         "Clue: $CLUE$\n"
                         "Before a guess counts, a critic who knows the clue says whether they "
                         "agree with it. You may then keep or change your guess.\n"
                         "Reply with one line of the form\n"
                         "guess: <word>\n"
                         "Propose your first guess.";
  p.turn_prompts[A] =
      "guess_feedback: $FEEDBACK$\n"
      "Propose your next guess.\n"
      "guess: <word>";
  p.extra_prompts["critic_relay"] =
      "The critic replied:\n"
      "$CRITIC_RESPONSE$\n"
      "Give your final guess for this attempt.\n"
      "guess: <word>";
  p.initial_prompts[B] =
      "You are the critic in a game of Wordle. The player looks for a secret 5-letter English "
      "word and has this clue: $CLUE$\n"
      "The player proposes the guess \"$GUESS$\". Does the guess fit the clue? Reply with "
      "exactly two lines:\n"
      "agreement: yes or no\n"
      "explanation: <one sentence>";
  p.turn_prompts[B] =
      "The player proposes the guess \"$GUESS$\".\n"
      "agreement: yes or no\n"
      "explanation: <one sentence>";
  p.keywords = wordle_keywords();
  p.keywords["agreement_prefix"] = "agreement:";
  p.keywords["explanation_prefix"] = "explanation:";
  p.keywords["yes"] = "yes";
  p.keywords["no"] = "no";
  return p;
}

constexpr const char* kReferenceImages =
    "You are playing a reference game. You see three images made of characters, where ▢ is an "
    "empty cell:\n\n"
    "First:\n$GRID1$\n\n"
    "Second:\n$GRID2$\n\n"
    "Third:\n$GRID3$\n\n";

LocalePack reference_en() {
  LocalePack p;
  p.language = "en";
  p.initial_prompts[A] =
      std::string(kReferenceImages) +
      "Describe the first image so that your partner, who sees the same images in a possibly "
      "different order, can tell it apart from the other two. Reply with one line that starts "
      "with \"Expression:\", like this:\n"
      "Expression: <your description>";
  p.initial_prompts[B] = std::string(kReferenceImages) +
                         "Your partner describes one of them: $EXPRESSION$\n"
                         "Which image is meant? Reply with one line of the form\n"
                         "Answer: first, second or third";
  p.keywords = {{"expression_prefix", "Expression:"},
                {"answer_prefix", "Answer:"},
                {"ordinal_1", "first"},
                {"ordinal_2", "second"},
                {"ordinal_3", "third"}};
  return p;
}

LocalePack drawing_en() {
  LocalePack p;
  p.language = "en";
  p.initial_prompts[A] =
      "You are giving drawing instructions. Your partner has an empty 5 by 5 grid and has to "
      "reproduce this image, where ▢ is an empty cell:\n\n"
      "$TARGET_GRID$\n\n"
      "Give one instruction per reply, starting with \"Instruction:\". When the drawing is "
      "complete, reply with\n"
      "Instruction: DONE";
  p.turn_prompts[A] =
      "Your partner has drawn:\n\n"
      "$GRID$\n\n"
      "Give your next instruction, or reply \"Instruction: DONE\" if the drawing is complete.";
  p.initial_prompts[B] =
      "You are drawing on a 5 by 5 grid. ▢ is an empty cell and $FILLED$ is a filled cell; all "
      "cells start empty. Follow each instruction and reply with the whole grid: five lines of "
      "five cells and nothing else.\n"
      "Instruction: $INSTRUCTION$";
  p.turn_prompts[B] = "Instruction: $INSTRUCTION$";
  p.keywords = {{"instruction_prefix", "Instruction:"}, {"done", "DONE"}};
  return p;
}

int default_max_turns(Flow flow) {
  switch (flow) {
    case Flow::kTaboo: return 3;
    case Flow::kWordle:
    case Flow::kWordleClue:
    case Flow::kWordleCritic: return 6;
    case Flow::kReference: return 1;
    case Flow::kDrawing: return 20;
  }
  return 1;
}

constexpr Flow kAllFlows[] = {Flow::kTaboo,        Flow::kWordle,    Flow::kWordleClue,
                              Flow::kWordleCritic, Flow::kReference, Flow::kDrawing};

}  // namespace

LocalePack english_pack(Flow flow) {
  switch (flow) {
    case Flow::kTaboo: return taboo_en();
    case Flow::kWordle: return wordle_en(false);
    case Flow::kWordleClue: return wordle_en(true);
    case Flow::kWordleCritic: return wordle_critic_en();
    case Flow::kReference: return reference_en();
    case Flow::kDrawing: return drawing_en();
  }
  throw UnknownGame("unknown flow");
}

GameSpec builtin_game_spec(Flow flow) {
  GameSpec spec;
  spec.game_name = std::string(to_string(flow));
  spec.flow = flow;
  spec.roles = flow_roles(flow);
  spec.max_turns = default_max_turns(flow);
  spec.locale_packs.emplace("en", english_pack(flow));
  return spec;
}

TemplateRequirements template_requirements(Flow flow) {
  TemplateRequirements r;
  switch (flow) {
    case Flow::kTaboo:
      r.initial[A] = {"TARGET", "REL_WORDS", "MAX_TURNS"};
      r.turn[A] = {"GUESS"};
      r.initial[B] = {"CLUE", "MAX_TURNS"};
      r.turn[B] = {"CLUE"};
      r.keywords = {"clue_prefix", "guess_prefix"};
      break;
    case Flow::kWordle:
    case Flow::kWordleClue:
      r.initial[A] = {"N", "MAX_TURNS"};
      if (flow == Flow::kWordleClue) r.initial[A].push_back("CLUE");
      r.turn[A] = {"FEEDBACK"};
      r.keywords = {"guess_prefix", "feedback_prefix", "mark_correct", "mark_present",
                    "mark_absent"};
      break;
    case Flow::kWordleCritic:
      r.initial[A] = {"N", "MAX_TURNS", "CLUE"};
      r.turn[A] = {"FEEDBACK"};
      r.extra["critic_relay"] = {"CRITIC_RESPONSE"};
      r.initial[B] = {"CLUE", "GUESS"};
      r.turn[B] = {"GUESS"};
      r.keywords = {"guess_prefix",     "feedback_prefix",    "mark_correct", "mark_present",
                    "mark_absent",      "agreement_prefix",   "explanation_prefix",
                    "yes",              "no"};
      break;
    case Flow::kReference:
      r.initial[A] = {"GRID1", "GRID2", "GRID3"};
      r.initial[B] = {"GRID1", "GRID2", "GRID3", "EXPRESSION"};
      r.keywords = {"expression_prefix", "answer_prefix", "ordinal_1", "ordinal_2", "ordinal_3"};
      break;
    case Flow::kDrawing:
      r.initial[A] = {"TARGET_GRID"};
      r.turn[A] = {"GRID"};
      r.initial[B] = {"INSTRUCTION"};
      r.turn[B] = {"INSTRUCTION"};
      r.keywords = {"instruction_prefix", "done"};
      break;
  }
  return r;
}

namespace {

void require_slots(const std::string& where, const std::string& tmpl,
                   const std::vector<std::string>& names) {
  const auto present = placeholders(tmpl);
  for (const auto& name : names)
    if (!present.count(name))
      throw InvalidGameSpec(where + " lacks placeholder $" + name + "$");
}

void check_role_templates(const LocalePack& pack, const std::map<Role, std::string>& templates,
                          const std::map<Role, std::vector<std::string>>& required,
                          const char* kind) {
  for (const auto& [role, names] : required) {
    auto it = templates.find(role);
    const std::string where = "locale pack '" + pack.language + "' " + kind + " prompt for " +
                              std::string(to_string(role));
    if (it == templates.end()) throw InvalidGameSpec(where + " is missing");
    require_slots(where, it->second, names);
  }
}

}  // namespace

void validate_locale_pack(Flow flow, const LocalePack& pack) {
  if (pack.language.empty()) throw InvalidGameSpec("locale pack without language code");
  const auto req = template_requirements(flow);
  check_role_templates(pack, pack.initial_prompts, req.initial, "initial");
  check_role_templates(pack, pack.turn_prompts, req.turn, "turn");
  for (const auto& [name, slots] : req.extra) {
    auto it = pack.extra_prompts.find(name);
    const std::string where = "locale pack '" + pack.language + "' prompt '" + name + "'";
    if (it == pack.extra_prompts.end()) throw InvalidGameSpec(where + " is missing");
    require_slots(where, it->second, slots);
  }
  for (const auto& name : req.keywords) {
    auto it = pack.keywords.find(name);
    if (it == pack.keywords.end() || text::trim(it->second).empty())
      throw InvalidGameSpec("locale pack '" + pack.language + "' keyword '" + name +
                            "' missing or empty");
  }
  const auto cps = text::utf8_decode(pack.filled_cell_char);
  if (cps.size() != 1 || text::display_width(cps[0]) != 1 ||
      pack.filled_cell_char == "▢" || cps[0] == U' ')
    throw InvalidGameSpec("locale pack '" + pack.language +
                          "' filled_cell_char must be one narrow, visible character");
}

void validate_game_spec(const GameSpec& spec) {
  if (spec.game_name.empty()) throw InvalidGameSpec("game spec without name");
  if (spec.max_turns < 1) throw InvalidGameSpec("max_turns must be at least 1");
  if (!spec.locale_packs.count("en"))
    throw InvalidGameSpec("game '" + spec.game_name + "' has no English locale pack");
  for (const auto& [code, pack] : spec.locale_packs) {
    if (code != pack.language)
      throw InvalidGameSpec("locale pack keyed '" + code + "' declares '" + pack.language + "'");
    validate_locale_pack(spec.flow, pack);
  }
}

GameCatalog GameCatalog::builtin() {
  GameCatalog c;
  for (Flow flow : kAllFlows) {
    GameSpec spec = builtin_game_spec(flow);
    c.games_.emplace(spec.game_name, std::move(spec));
  }
  return c;
}

const GameSpec& GameCatalog::find(std::string_view name) const {
  auto it = games_.find(name);
  if (it == games_.end()) {
    std::string known;
    for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
    throw UnknownGame("unknown game '" + std::string(name) + "'; available games: " + known);
  }
  return it->second;
}

bool GameCatalog::contains(std::string_view name) const { return games_.find(name) != games_.end(); }

std::vector<std::string> GameCatalog::names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : games_) out.push_back(name);
  return out;
}

void GameCatalog::add_locale_pack(std::string_view game, LocalePack pack) {
  auto it = games_.find(game);
  if (it == games_.end()) throw UnknownGame("unknown game '" + std::string(game) + "'");
  validate_locale_pack(it->second.flow, pack);
  std::string code = pack.language;
  it->second.locale_packs.insert_or_assign(std::move(code), std::move(pack));
}

void GameCatalog::load_locale_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("locale directory not found: " + dir.string());
  for (const auto& [name, spec] : games_) {
    const fs::path game_dir = dir / name;
    if (!fs::is_directory(game_dir)) continue;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(game_dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      LocalePack pack;
      try {
        pack = locale_pack_from_json(read_json_file(file));
      } catch (const json::exception& e) {
        throw InvalidGameSpec("malformed locale pack " + file.string() + ": " + e.what());
      }
      add_locale_pack(name, std::move(pack));
    }
  }
}

}  // namespace playbench::games
