#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "playbench/interface/session.hpp"
#include "playbench/metrics/aggregate.hpp"

namespace playbench {

struct ServiceOptions {
  std::filesystem::path results_dir = "results";
  metrics::ScoreOptions score;
};

// HTTP+JSON front of the session manager and the results directory:
//   POST /sessions                {game, instance_id, human_role, language}
//   GET  /sessions/{id}
//   POST /sessions/{id}/response  {text}
//   GET  /leaderboard
//   GET  /transcripts             list of transcript paths
//   GET  /transcripts/{path}
//   GET  /games                   games with their instance ids
class Service {
 public:
  Service(SessionManager& sessions, ServiceOptions options);
  ~Service();

  // Binds and serves until stop(); returns false when binding fails.
  bool listen(const std::string& host, int port);
  // Binds to a free port and returns it (-1 on failure); call serve() next.
  int bind_any_port(const std::string& host);
  bool serve();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Transcript path safe to open below `root`, or nullopt for traversal
// attempts and absolute paths.
std::optional<std::filesystem::path> safe_results_path(const std::filesystem::path& root,
                                                       const std::string& relative);

}  // namespace playbench
