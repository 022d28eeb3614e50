#pragma once

// JSON forms of the engine types: transcript files, instance files and
// locale packs.

#include <filesystem>
#include <string>
#include <vector>

#include "playbench/engine/types.hpp"

namespace playbench {

json to_json(const Event& event);
Event event_from_json(const json& j);

json to_json(const Transcript& transcript);
Transcript transcript_from_json(const json& j);

// Stable text form: 2-space indent, trailing newline, UTF-8 kept verbatim.
std::string dump_transcript(const Transcript& transcript);

json to_json(const LocalePack& pack);
LocalePack locale_pack_from_json(const json& j);

// Instance file: {game, version, experiments: [{name, instances: [...]}]}.
struct InstanceFile {
  std::string game;
  int version = 1;
  std::vector<GameInstance> instances;  // experiment_name set per instance
};

json to_json(const InstanceFile& file);
InstanceFile instance_file_from_json(const json& j);
InstanceFile read_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path, const InstanceFile& file);

json read_json_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace playbench
