#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "playbench/engine/types.hpp"

namespace playbench::games {

// The shipped English pack for a flow.
LocalePack english_pack(Flow flow);

// Shipped definition of a game (name == flow name, English pack only).
GameSpec builtin_game_spec(Flow flow);

// Placeholders the flow fills into each template; a pack must use each one.
struct TemplateRequirements {
  std::map<Role, std::vector<std::string>> initial;
  std::map<Role, std::vector<std::string>> turn;
  std::map<std::string, std::vector<std::string>> extra;
  std::vector<std::string> keywords;
};
TemplateRequirements template_requirements(Flow flow);

// Throws InvalidGameSpec when a template lacks a required placeholder, a
// keyword is missing or empty, or the filled cell is not one narrow glyph.
void validate_locale_pack(Flow flow, const LocalePack& pack);

// Throws InvalidGameSpec for a malformed spec (no "en" pack, max_turns < 1...).
void validate_game_spec(const GameSpec& spec);

// Game specs by name: the shipped games plus any user-supplied locale packs.
class GameCatalog {
 public:
  static GameCatalog builtin();

  const GameSpec& find(std::string_view name) const;  // throws UnknownGame
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;

  void add_locale_pack(std::string_view game, LocalePack pack);
  // Loads `<dir>/<game>/<language>.json` for every known game.
  void load_locale_dir(const std::filesystem::path& dir);

 private:
  std::map<std::string, GameSpec, std::less<>> games_;
};

}  // namespace playbench::games
