#include "playbench/games/instances.hpp"

#include <algorithm>
#include <set>

#include "playbench/errors.hpp"
#include "playbench/games/wordle.hpp"

namespace playbench::games {

namespace {

template <typename T>
T field(const json& params, const char* name) {
  try {
    return params.at(name).get<T>();
  } catch (const json::exception&) {
    throw InvalidInstance(std::string("instance parameter '") + name + "' missing or mistyped");
  }
}

int turns_field(const json& params, int fallback) {
  if (!params.contains("max_turns")) return fallback;
  const int turns = field<int>(params, "max_turns");
  if (turns < 1) throw InvalidInstance("max_turns must be at least 1");
  return turns;
}

bool is_plain_token(const std::string& word) {
  return !word.empty() && std::none_of(word.begin(), word.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || (c >= 'A' && c <= 'Z');
  });
}

}  // namespace

TabooInstance TabooInstance::from_params(const json& params) {
  TabooInstance inst;
  inst.target_word = field<std::string>(params, "target_word");
  inst.related_words = field<std::vector<std::string>>(params, "related_words");
  inst.max_turns = turns_field(params, 3);
  if (!is_plain_token(inst.target_word))
    throw InvalidInstance("taboo target must be a lowercase token without whitespace");
  if (inst.related_words.size() != 3)
    throw InvalidInstance("taboo needs exactly 3 related words");
  for (const auto& w : inst.related_words) {
    if (!is_plain_token(w))
      throw InvalidInstance("taboo related word '" + w + "' must be a lowercase token");
    if (w == inst.target_word) throw InvalidInstance("taboo target listed among related words");
  }
  return inst;
}

json TabooInstance::to_params() const {
  return json{{"target_word", target_word}, {"related_words", related_words}, {"max_turns", max_turns}};
}

WordleInstance WordleInstance::from_params(const json& params) {
  WordleInstance inst;
  inst.target_word = field<std::string>(params, "target_word");
  if (!is_wordle_word(inst.target_word))
    throw InvalidInstance("wordle target must be 5 lowercase letters");
  if (params.contains("clue") && !params.at("clue").is_null())
    inst.clue = field<std::string>(params, "clue");
  inst.max_turns = turns_field(params, 6);
  return inst;
}

json WordleInstance::to_params() const {
  json j{{"target_word", target_word}, {"max_turns", max_turns}};
  if (clue) j["clue"] = *clue;
  return j;
}

ReferenceInstance ReferenceInstance::from_params(const json& params) {
  ReferenceInstance inst;
  const auto grids = field<std::vector<json>>(params, "grids");
  if (grids.size() != 3) throw InvalidInstance("reference needs exactly 3 grids");
  for (size_t i = 0; i < 3; ++i) inst.grids[i] = grid_from_json(grids[i]);
  const auto order = field<std::vector<int>>(params, "order_for_b");
  if (order.size() != 3 || std::set<int>(order.begin(), order.end()) != std::set<int>{1, 2, 3})
    throw InvalidInstance("order_for_b must be a permutation of 1, 2, 3");
  std::copy(order.begin(), order.end(), inst.order_for_b.begin());
  inst.correct_choice = field<int>(params, "correct_choice");
  const auto target_pos = std::find(order.begin(), order.end(), 1) - order.begin() + 1;
  if (inst.correct_choice != target_pos)
    throw InvalidInstance("correct_choice does not match order_for_b");
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (inst.grids[a] == inst.grids[b]) throw InvalidInstance("reference grids must differ");
  return inst;
}

json ReferenceInstance::to_params() const {
  json gs = json::array();
  for (const auto& g : grids) gs.push_back(grid_to_json(g));
  return json{{"grids", gs},
              {"order_for_b", std::vector<int>(order_for_b.begin(), order_for_b.end())},
              {"correct_choice", correct_choice}};
}

DrawingInstance DrawingInstance::from_params(const json& params) {
  DrawingInstance inst;
  inst.target_grid = grid_from_json(params.contains("target_grid") ? params.at("target_grid")
                                                                    : json());
  if (inst.target_grid.empty()) throw InvalidInstance("drawing target needs a filled cell");
  inst.max_turns = turns_field(params, 20);
  return inst;
}

json DrawingInstance::to_params() const {
  return json{{"target_grid", grid_to_json(target_grid)}, {"max_turns", max_turns}};
}

}  // namespace playbench::games
