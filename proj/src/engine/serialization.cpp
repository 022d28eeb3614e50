#include "playbench/engine/serialization.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <thread>

#include "playbench/errors.hpp"

namespace playbench {

namespace fs = std::filesystem;

json to_json(const Event& event) {
  return json{{"turn", event.turn},
              {"seq", event.seq},
              {"actor", to_string(event.actor)},
              {"kind", to_string(event.kind)},
              {"content", event.content}};
}

Event event_from_json(const json& j) {
  Event e;
  e.turn = j.at("turn").get<int>();
  e.seq = j.at("seq").get<int>();
  e.actor = parse_role(j.at("actor").get<std::string>());
  e.kind = parse_event_kind(j.at("kind").get<std::string>());
  e.content = j.at("content");
  return e;
}

json to_json(const Transcript& t) {
  json models = json::object();
  for (const auto& [role, id] : t.meta.models) models[std::string(to_string(role))] = id;
  json meta{{"game", t.meta.game},
            {"experiment", t.meta.experiment},
            {"instance_id", t.meta.instance_id},
            {"models", models},
            {"language", t.meta.language},
            {"seed", t.meta.seed},
            {"started_at", t.meta.started_at},
            {"finished_at", t.meta.finished_at},
            {"instance", t.meta.instance}};
  json events = json::array();
  for (const auto& e : t.events) events.push_back(to_json(e));
  return json{{"meta", meta},
              {"events", events},
              {"outcome", to_string(t.outcome)},
              {"abort_cause", to_string(t.abort_cause)}};
}

Transcript transcript_from_json(const json& j) {
  Transcript t;
  const json& meta = j.at("meta");
  t.meta.game = meta.at("game").get<std::string>();
  t.meta.experiment = meta.at("experiment").get<std::string>();
  t.meta.instance_id = meta.at("instance_id").get<int64_t>();
  for (const auto& [role, id] : meta.at("models").items())
    t.meta.models[parse_role(role)] = id.get<std::string>();
  t.meta.language = meta.at("language").get<std::string>();
  t.meta.seed = meta.at("seed").get<uint64_t>();
  t.meta.started_at = meta.value("started_at", "");
  t.meta.finished_at = meta.value("finished_at", "");
  t.meta.instance = meta.value("instance", json::object());
  for (const auto& e : j.at("events")) t.events.push_back(event_from_json(e));
  t.outcome = parse_outcome(j.at("outcome").get<std::string>());
  t.abort_cause = parse_abort_cause(j.value("abort_cause", "none"));
  return t;
}

std::string dump_transcript(const Transcript& transcript) {
  return to_json(transcript).dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

namespace {

json role_map(const std::map<Role, std::string>& m) {
  json out = json::object();
  for (const auto& [role, text] : m) out[std::string(to_string(role))] = text;
  return out;
}

std::map<Role, std::string> role_map_from(const json& j) {
  std::map<Role, std::string> out;
  for (const auto& [role, text] : j.items()) out[parse_role(role)] = text.get<std::string>();
  return out;
}

}  // namespace

json to_json(const LocalePack& pack) {
  return json{{"language", pack.language},
              {"initial_prompts", role_map(pack.initial_prompts)},
              {"turn_prompts", role_map(pack.turn_prompts)},
              {"extra_prompts", pack.extra_prompts},
              {"keywords", pack.keywords},
              {"filled_cell_char", pack.filled_cell_char}};
}

LocalePack locale_pack_from_json(const json& j) {
  LocalePack pack;
  pack.language = j.at("language").get<std::string>();
  pack.initial_prompts = role_map_from(j.at("initial_prompts"));
  pack.turn_prompts = role_map_from(j.value("turn_prompts", json::object()));
  pack.extra_prompts =
      j.value("extra_prompts", json::object()).get<std::map<std::string, std::string>>();
  pack.keywords = j.at("keywords").get<std::map<std::string, std::string>>();
  pack.filled_cell_char = j.value("filled_cell_char", "X");
  return pack;
}

json to_json(const InstanceFile& file) {
  json experiments = json::array();
  for (const auto& inst : file.instances) {
    if (experiments.empty() || experiments.back()["name"] != inst.experiment_name)
      experiments.push_back(json{{"name", inst.experiment_name}, {"instances", json::array()}});
    json entry{{"instance_id", inst.instance_id}};
    for (const auto& [key, value] : inst.params.items()) entry[key] = value;
    experiments.back()["instances"].push_back(entry);
  }
  return json{{"game", file.game}, {"version", file.version}, {"experiments", experiments}};
}

InstanceFile instance_file_from_json(const json& j) {
  InstanceFile file;
  try {
    file.game = j.at("game").get<std::string>();
    file.version = j.value("version", 1);
    for (const auto& exp : j.at("experiments")) {
      const auto name = exp.at("name").get<std::string>();
      std::set<int64_t> seen;
      for (const auto& entry : exp.at("instances")) {
        GameInstance inst;
        inst.game_name = file.game;
        inst.experiment_name = name;
        inst.instance_id = entry.at("instance_id").get<int64_t>();
        if (!seen.insert(inst.instance_id).second)
          throw InvalidInstance("duplicate instance_id " + std::to_string(inst.instance_id) +
                                " in experiment '" + name + "'");
        for (const auto& [key, value] : entry.items())
          if (key != "instance_id") inst.params[key] = value;
        file.instances.push_back(std::move(inst));
      }
    }
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance file: ") + e.what());
  }
  return file;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("cannot parse " + path.string() + ": " + e.what());
  }
}

InstanceFile read_instance_file(const fs::path& path) {
  return instance_file_from_json(read_json_file(path));
}

void write_instance_file(const fs::path& path, const InstanceFile& file) {
  write_file_atomic(path, to_json(file).dump(2, ' ', false) + "\n");
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  static std::atomic<uint64_t> counter{0};
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id() << "." << counter++;
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace playbench
