#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "playbench/engine/serialization.hpp"

namespace playbench {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPartial = 2;  // run finished with backend failures

// Runs the command line tool on `args` (without the program name).
// Subcommands: run, score, leaderboard, correlate, instances, serve, delta.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Instance files named by `paths`: files as-is, directories by their *.json
// entries in name order.
std::vector<InstanceFile> load_instance_files(const std::vector<std::filesystem::path>& paths);

// "tau=0.800 p=0.0833 n=5"
std::string format_correlation(double tau, double p_value, int n);

}  // namespace playbench
