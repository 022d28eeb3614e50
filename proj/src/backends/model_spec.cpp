#include "playbench/backends/model_spec.hpp"

#include <algorithm>
#include <cctype>

#include "playbench/engine/serialization.hpp"
#include "playbench/errors.hpp"

namespace playbench {

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kRemoteChat: return "remote_chat";
    case BackendKind::kScripted: return "scripted";
    case BackendKind::kOracle: return "oracle";
    case BackendKind::kHuman: return "human";
  }
  return "?";
}

BackendKind parse_backend_kind(std::string_view s) {
  if (s == "remote_chat") return BackendKind::kRemoteChat;
  if (s == "scripted") return BackendKind::kScripted;
  if (s == "oracle") return BackendKind::kOracle;
  if (s == "human") return BackendKind::kHuman;
  throw Error("unknown backend kind '" + std::string(s) + "'");
}

ModelSpec model_spec_from_json(const json& j) {
  ModelSpec s;
  try {
    s.model_id = j.at("model_id").get<std::string>();
    s.backend_kind = parse_backend_kind(j.value("backend", "scripted"));
    s.endpoint_url = j.value("endpoint_url", "");
    s.auth_env_var = j.value("auth_env_var", "");
    s.remote_model = j.value("remote_model", "");
    s.reply_path = j.value("reply_path", s.reply_path);
    s.requests_per_minute = j.value("requests_per_minute", 0.0);
    if (j.contains("gen_params")) {
      const json& g = j.at("gen_params");
      s.gen_params.temperature = g.value("temperature", 0.0);
      s.gen_params.max_response_tokens = g.value("max_response_tokens", 300);
    }
    s.script = j.value("script", std::vector<std::string>{});
    s.strategy = j.value("strategy", "");
    s.word_pool = j.value("word_pool", "");
  } catch (const json::exception& e) {
    throw Error("malformed model registry entry: " + std::string(e.what()));
  }
  if (s.model_id.empty()) throw Error("model registry entry without model_id");
  if (s.gen_params.temperature < 0)
    throw Error("model '" + s.model_id + "': temperature must be >= 0");
  if (s.backend_kind == BackendKind::kRemoteChat && (s.endpoint_url.empty() || s.auth_env_var.empty()))
    throw Error("remote model '" + s.model_id + "' needs endpoint_url and auth_env_var");
  return s;
}

json to_json(const ModelSpec& s) {
  json j{{"model_id", s.model_id}, {"backend", to_string(s.backend_kind)}};
  if (s.backend_kind == BackendKind::kRemoteChat) {
    j["endpoint_url"] = s.endpoint_url;
    j["auth_env_var"] = s.auth_env_var;
    if (!s.remote_model.empty()) j["remote_model"] = s.remote_model;
    j["reply_path"] = s.reply_path;
    j["requests_per_minute"] = s.requests_per_minute;
    j["gen_params"] = {{"temperature", s.gen_params.temperature},
                       {"max_response_tokens", s.gen_params.max_response_tokens}};
  }
  if (!s.script.empty()) j["script"] = s.script;
  if (!s.strategy.empty()) j["strategy"] = s.strategy;
  if (!s.word_pool.empty()) j["word_pool"] = s.word_pool;
  return j;
}

ModelRegistry ModelRegistry::builtin() {
  ModelRegistry r;
  for (const char* name : {"scripted:perfect", "scripted:perfect_reference", "scripted:perfect_drawing",
                           "scripted:perfect_taboo"}) {
    ModelSpec s;
    s.model_id = name;
    s.backend_kind = BackendKind::kScripted;
    s.strategy = "perfect";
    r.add(s);
  }
  ModelSpec random;
  random.model_id = "scripted:random_reference";
  random.backend_kind = BackendKind::kScripted;
  random.strategy = "random_reference";
  r.add(random);
  ModelSpec human;
  human.model_id = "human";
  human.backend_kind = BackendKind::kHuman;
  r.add(human);
  return r;
}

ModelRegistry ModelRegistry::load(const std::filesystem::path& path) {
  ModelRegistry r = builtin();
  const json j = read_json_file(path);
  if (!j.is_array()) throw Error("model registry must be a JSON list: " + path.string());
  for (const auto& entry : j) r.add(model_spec_from_json(entry));
  return r;
}

void ModelRegistry::add(ModelSpec spec) {
  std::string id = spec.model_id;
  specs_.insert_or_assign(std::move(id), std::move(spec));
}

bool ModelRegistry::contains(const std::string& model_id) const { return specs_.count(model_id) > 0; }

std::vector<std::string> ModelRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, spec] : specs_) out.push_back(id);
  return out;
}

namespace {

std::string normalize(const std::string& s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

const ModelSpec& ModelRegistry::resolve(const std::string& model_id) const {
  auto it = specs_.find(model_id);
  if (it != specs_.end()) return it->second;

  const std::string query = normalize(model_id);
  std::vector<std::pair<size_t, std::string>> near;
  for (const auto& [id, spec] : specs_) {
    const std::string cand = normalize(id);
    const size_t d = edit_distance(query, cand);
    const bool related = !query.empty() && (cand.starts_with(query) || query.starts_with(cand));
    if (related || d <= 3) near.emplace_back(related ? 0 : d, id);
  }
  std::sort(near.begin(), near.end());
  std::string msg = "unknown model '" + model_id + "'";
  if (!near.empty()) {
    msg += "; did you mean ";
    for (size_t i = 0; i < near.size() && i < 3; ++i) msg += (i ? ", '" : "'") + near[i].second + "'";
    msg += "?";
  }
  throw UnresolvableModel(msg);
}

ModelSpec resolve_model(const std::string& model_id, const std::filesystem::path& registry_file) {
  return ModelRegistry::load(registry_file).resolve(model_id);
}

}  // namespace playbench
