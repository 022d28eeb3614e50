#include "playbench/backends/factory.hpp"

#include <map>
#include <mutex>

#include "playbench/backends/oracle.hpp"
#include "playbench/errors.hpp"
#include "playbench/games/generators.hpp"
#include "playbench/games/wordle.hpp"

namespace playbench {

const std::vector<std::string>& wordle_pool_words(const std::string& path) {
  static std::mutex mutex;
  static std::map<std::string, std::vector<std::string>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(path);
  if (it != cache.end()) return it->second;
  std::vector<std::string> words;
  for (const auto& entry : games::read_word_pool(path))
    if (games::is_wordle_word(entry.word)) words.push_back(entry.word);
  return cache.emplace(path, std::move(words)).first->second;
}

std::unique_ptr<Player> make_player(const ModelSpec& spec, const PlayerSetup& setup,
                                    const BackendContext& context) {
  switch (spec.backend_kind) {
    case BackendKind::kRemoteChat:
      return std::make_unique<RemotePlayer>(spec, context.chat);
    case BackendKind::kHuman:
      if (!context.human_mailbox) throw PlanError("model '" + spec.model_id + "' needs a human session");
      return std::make_unique<HumanPlayer>(spec.model_id, context.human_mailbox, context.human_timeout);
    case BackendKind::kOracle: {
      const bool wordle = setup.flow == Flow::kWordle || setup.flow == Flow::kWordleClue ||
                          setup.flow == Flow::kWordleCritic;
      if (!wordle || setup.role != Role::kPlayerA)
        throw PlanError("oracle model '" + spec.model_id + "' only plays the wordle guesser");
      if (!setup.pack) throw PlanError("oracle model '" + spec.model_id + "' needs a locale pack");
      std::vector<std::string> pool;
      if (!spec.word_pool.empty()) {
        pool = wordle_pool_words(spec.word_pool);
      } else if (setup.word_pool) {
        pool = *setup.word_pool;
      } else {
        throw PlanError("oracle model '" + spec.model_id + "' needs a word pool");
      }
      return std::make_unique<OracleWordlePlayer>(spec.model_id, std::move(pool), *setup.pack);
    }
    case BackendKind::kScripted: {
      if (spec.strategy == "perfect") {
        PlayerSetup s = setup;
        if (!spec.word_pool.empty()) s.word_pool = wordle_pool_words(spec.word_pool);
        return std::make_unique<PerfectPlayer>(spec.model_id, std::move(s));
      }
      if (spec.strategy == "random_reference") return std::make_unique<RandomReferencePlayer>(spec.model_id, setup);
      if (spec.strategy.empty() || spec.strategy == "replay")
        return std::make_unique<ScriptedPlayer>(spec.model_id, spec.script);
      throw PlanError("model '" + spec.model_id + "' has unknown strategy '" + spec.strategy + "'");
    }
  }
  throw PlanError("unsupported backend");
}

std::string generate(const ModelSpec& spec, std::span<const Message> history) {
  switch (spec.backend_kind) {
    case BackendKind::kRemoteChat:
      return ChatClient(spec).generate(history);
    case BackendKind::kScripted: {
      if (!spec.strategy.empty() && spec.strategy != "replay") break;
      size_t replies = 0;
      for (const auto& m : history) replies += m.role == MessageRole::kAssistant;
      if (replies >= spec.script.size())
        throw BackendError(BackendErrorKind::kScriptExhausted, spec.model_id + ": script exhausted");
      return spec.script[replies];
    }
    default:
      break;
  }
  throw Error("model '" + spec.model_id + "' needs a game seat; use make_player");
}

}  // namespace playbench
