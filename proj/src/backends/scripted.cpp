#include "playbench/backends/scripted.hpp"

#include "playbench/backends/oracle.hpp"
#include "playbench/errors.hpp"
#include "playbench/games/instances.hpp"
#include "playbench/games/pixel_grid.hpp"
#include "playbench/text.hpp"

namespace playbench {

namespace {

using games::PixelGrid;

const std::string& last_prompt(std::span<const Message> history) {
  for (auto it = history.rbegin(); it != history.rend(); ++it)
    if (it->role == MessageRole::kUser) return it->content;
  throw BackendError(BackendErrorKind::kMalformedReply, "no prompt to respond to");
}

size_t replies_so_far(std::span<const Message> history) {
  size_t n = 0;
  for (const auto& m : history) n += m.role == MessageRole::kAssistant;
  return n;
}

// Grids rendered into a prompt: runs of five lines with five cells each.
std::vector<PixelGrid> grids_in(std::string_view prompt, const std::string& filled) {
  std::vector<PixelGrid> grids;
  std::vector<std::string> run;
  auto is_row = [&](std::string_view line) {
    const auto cells = text::split_whitespace(line);
    if (cells.size() != 5) return false;
    for (auto c : cells)
      if (c != games::kEmptyCell && c != filled) return false;
    return true;
  };
  for (const auto& line : text::split_lines(prompt)) {
    if (is_row(line)) {
      std::string compact;
      for (auto c : text::split_whitespace(line)) compact += c;
      run.push_back(compact);
      if (run.size() == 5) {
        grids.push_back(PixelGrid::from_rows(run, filled));
        run.clear();
      }
    } else {
      run.clear();
    }
  }
  return grids;
}

// A grid written inline as five slash-separated rows.
std::optional<PixelGrid> inline_grid(std::string_view prompt, const std::string& filled) {
  for (auto raw : text::split_whitespace(prompt)) {
    std::string_view token = raw;
    // Edge punctuation is only stripped when it cannot be a filled cell.
    if (filled.size() != 1 || !token.ends_with(filled)) token = text::strip_punct(token);
    std::vector<std::string> rows;
    std::string current;
    for (char c : token) {
      if (c == '/') {
        rows.push_back(current);
        current.clear();
      } else {
        current += c;
      }
    }
    rows.push_back(current);
    if (rows.size() != 5) continue;
    try {
      return PixelGrid::from_rows(rows, filled);
    } catch (const InvalidInstance&) {
    }
  }
  return std::nullopt;
}

std::string slash_rows(const PixelGrid& grid, const std::string& filled) {
  return text::join(grid.rows(filled), "/");
}

}  // namespace

std::string spell_out(std::string_view word) {
  return text::join(text::utf8_chars(word), "-");
}

std::optional<std::string> unspell(std::string_view token) {
  const auto chars = text::utf8_chars(token);
  if (chars.size() < 3 || chars.size() % 2 == 0) return std::nullopt;
  std::string out;
  for (size_t i = 0; i < chars.size(); ++i) {
    if (i % 2 == 1) {
      if (chars[i] != "-") return std::nullopt;
    } else {
      out += chars[i];
    }
  }
  return out;
}

ScriptedPlayer::ScriptedPlayer(std::string model_id, std::vector<std::string> script)
    : model_id_(std::move(model_id)), script_(std::move(script)) {}

std::string ScriptedPlayer::respond(std::span<const Message>) {
  if (next_ >= script_.size())
    throw BackendError(BackendErrorKind::kScriptExhausted,
                       model_id_ + ": script has only " + std::to_string(script_.size()) + " replies");
  return script_[next_++];
}

PerfectPlayer::PerfectPlayer(std::string model_id, PlayerSetup setup)
    : model_id_(std::move(model_id)), setup_(std::move(setup)) {
  if (!setup_.pack) throw Error("perfect player needs a locale pack");
}

std::string PerfectPlayer::respond(std::span<const Message> history) {
  const LocalePack& pack = *setup_.pack;
  const std::string& filled = pack.filled_cell_char;
  const std::string& prompt = last_prompt(history);
  const bool a = setup_.role == Role::kPlayerA;

  switch (setup_.flow) {
    case Flow::kTaboo: {
      if (a) {
        const auto inst = games::TabooInstance::from_params(setup_.instance_params);
        return pack.keyword("clue_prefix") + " " + spell_out(inst.target_word);
      }
      for (auto token : text::split_whitespace(prompt))
        if (auto word = unspell(text::strip_punct(token)))
          return pack.keyword("guess_prefix") + " " + *word;
      return pack.keyword("guess_prefix") + " unknown";
    }
    case Flow::kWordle:
    case Flow::kWordleClue:
    case Flow::kWordleCritic: {
      if (!a)
        return pack.keyword("agreement_prefix") + " " + pack.keyword("yes") + "\n" +
               pack.keyword("explanation_prefix") + " ok";
      std::vector<std::string> pool;
      if (setup_.word_pool) {
        pool = *setup_.word_pool;
      } else {
        pool = {games::WordleInstance::from_params(setup_.instance_params).target_word};
      }
      return oracle_wordle(pool, feedback_from_history(history, pack), pack);
    }
    case Flow::kReference: {
      const auto grids = grids_in(prompt, filled);
      if (grids.size() < 3)
        throw BackendError(BackendErrorKind::kMalformedReply, "reference prompt shows no images");
      if (a) return pack.keyword("expression_prefix") + " " + slash_rows(grids[0], filled);
      const auto described = inline_grid(prompt, filled);
      for (int i = 0; i < 3; ++i)
        if (described && grids[i] == *described)
          return pack.keyword("answer_prefix") + " " + pack.keyword("ordinal_" + std::to_string(i + 1));
      return pack.keyword("answer_prefix") + " " + pack.keyword("ordinal_1");
    }
    case Flow::kDrawing: {
      if (!a) {
        const auto grid = inline_grid(prompt, filled).value_or(PixelGrid{});
        return grid.render(filled);
      }
      // The first prompt shows the target; later prompts show the drawing so far.
      const auto first = grids_in(history.front().content, filled);
      if (first.empty())
        throw BackendError(BackendErrorKind::kMalformedReply, "drawing prompt shows no target");
      const PixelGrid& target = first.front();
      if (replies_so_far(history) > 0) {
        const auto drawn = grids_in(prompt, filled);
        if (!drawn.empty() && drawn.front() == target)
          return pack.keyword("instruction_prefix") + " " + pack.keyword("done");
      }
      return pack.keyword("instruction_prefix") + " " + slash_rows(target, filled);
    }
  }
  throw Error("unsupported flow");
}

RandomReferencePlayer::RandomReferencePlayer(std::string model_id, const PlayerSetup& setup)
    : model_id_(std::move(model_id)), pack_(setup.pack), role_(setup.role), rng_(setup.seed) {
  if (setup.flow != Flow::kReference)
    throw PlanError(model_id_ + " only plays the reference game");
  if (!pack_) throw Error("random reference player needs a locale pack");
}

std::string RandomReferencePlayer::respond(std::span<const Message>) {
  if (role_ == Role::kPlayerA) return pack_->keyword("expression_prefix") + " the one you see";
  const int pick = static_cast<int>(rng_.index(3)) + 1;
  return pack_->keyword("answer_prefix") + " " + pack_->keyword("ordinal_" + std::to_string(pick));
}

}  // namespace playbench
