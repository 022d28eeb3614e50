#include <gtest/gtest.h>

#include <thread>

#include <httplib.h>

#include "playbench/games/generators.hpp"
#include "playbench/interface/service.hpp"
#include "playbench/interface/session.hpp"
#include "playbench/engine/runner.hpp"
#include "test_support.hpp"

namespace playbench {
namespace {

using namespace playbench::testing;
namespace fs = std::filesystem;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    instances_ = games::generate_instances("reference", 3, 42);
    SessionConfig config;
    config.instance_files = {instances_};
    config.results_dir = dir_ / "results";
    config.clock = fixed_clock();
    sessions_ = std::make_unique<SessionManager>(config, games::GameCatalog::builtin(), ModelRegistry::builtin());
    service_ = std::make_unique<Service>(*sessions_, ServiceOptions{dir_ / "results", {}});
    port_ = service_->bind_any_port("127.0.0.1");
    thread_ = std::thread([this] { service_->serve(); });
    while (!service_->running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    service_->stop();
    thread_.join();
  }

  json post(const std::string& path, const json& body, int expected) {
    auto res = client_->Post(path, body.dump(), "application/json");
    EXPECT_TRUE(res);
    if (!res) return nullptr;
    EXPECT_EQ(res->status, expected) << res->body;
    return json::parse(res->body);
  }
  json get(const std::string& path, int expected) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res);
    if (!res) return nullptr;
    EXPECT_EQ(res->status, expected) << res->body;
    return json::parse(res->body);
  }
  int64_t first_id() const { return instances_.instances.at(0).instance_id; }
  // Position of the target in player B's order for the first instance.
  int correct_choice() const {
    return games::ReferenceInstance::from_params(instances_.instances.at(0).params).correct_choice;
  }

  TempDir dir_;
  InstanceFile instances_;
  std::unique_ptr<SessionManager> sessions_;
  std::unique_ptr<Service> service_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ServiceTest, HumanPlaysOneEpisode) {
  const json created = post("/sessions", {{"game", "reference"}, {"instance_id", first_id()}, {"human_role", "player_b"}}, 201);
  ASSERT_EQ(created.at("status"), "awaiting_human");
  EXPECT_FALSE(created.at("pending_prompt").get<std::string>().empty());
  const std::string id = created.at("session_id");
  EXPECT_EQ(id.size(), 32u);

  const json polled = get("/sessions/" + id, 200);
  EXPECT_EQ(polled.at("status"), "awaiting_human");

  const json done =
      post("/sessions/" + id + "/response", {{"text", "Answer: " + std::to_string(correct_choice())}}, 200);
  EXPECT_EQ(done.at("status"), "finished");
  EXPECT_EQ(done.at("outcome"), "Success");
  EXPECT_FALSE(done.at("transcript_so_far").empty());

  post("/sessions/" + id + "/response", {{"text", "Answer: 1"}}, 409);

  const json listing = get("/transcripts", 200);
  ASSERT_EQ(listing.size(), 1u);
  const json transcript = get("/transcripts/" + listing[0].get<std::string>(), 200);
  EXPECT_EQ(transcript.at("outcome"), "Success");

  const json board = get("/leaderboard", 200);
  ASSERT_EQ(board.size(), 1u);
}

TEST_F(ServiceTest, ErrorsMapToStatusCodes) {
  get("/sessions/0123456789abcdef0123456789abcdef", 404);
  post("/sessions/0123456789abcdef0123456789abcdef/response", {{"text", "x"}}, 404);
  post("/sessions", {{"game", "chess"}, {"instance_id", 0}}, 404);
  post("/sessions", {{"game", "reference"}, {"instance_id", 987654}}, 404);
  post("/sessions", {{"game", "reference"}}, 400);
  auto res = client_->Post("/sessions", "not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(ServiceTest, EmptyLeaderboardAndGames) {
  EXPECT_EQ(get("/leaderboard", 200), json::array());
  const json games = get("/games", 200);
  ASSERT_EQ(games.size(), 1u);
  EXPECT_EQ(games[0].at("game"), "reference");
  EXPECT_EQ(games[0].at("instances").size(), 3u);
}

TEST_F(ServiceTest, TranscriptPathsStayInsideResults) {
  fs::create_directories(dir_ / "results");
  write_file_atomic(dir_ / "secret.json", "{}");
  for (const std::string bad : {"../secret.json", "%2e%2e/secret.json", "a/../../secret.json", "manifest.json"}) {
    auto res = client_->Get("/transcripts/" + bad);
    ASSERT_TRUE(res);
    EXPECT_TRUE(res->status == 403 || res->status == 404) << bad << " -> " << res->status;
  }
  EXPECT_FALSE(safe_results_path(dir_ / "results", "/etc/passwd"));
  EXPECT_FALSE(safe_results_path(dir_ / "results", "../x"));
  fs::create_directory_symlink(dir_.path(), dir_ / "results" / "escape");
  EXPECT_FALSE(safe_results_path(dir_ / "results", "escape/secret.json"));
  EXPECT_TRUE(safe_results_path(dir_ / "results", "m/reference/default/1/transcript.json"));
}

TEST_F(ServiceTest, CorsHeader) {
  auto res = client_->Get("/games");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
}

// A human seat and a scripted seat fed the same replies yield the same
// events; only timestamps and the player id may differ.
TEST(Sessions, HumanAndScriptedSeatsAreInterchangeable) {
  TempDir dir;
  const auto file = games::generate_instances("reference", 1, 7);
  const auto& inst = file.instances.at(0);
  const int choice = games::ReferenceInstance::from_params(inst.params).correct_choice;
  const std::string reply = "Answer: " + std::to_string(choice);

  SessionConfig config;
  config.instance_files = {file};
  config.results_dir = dir / "human";
  SessionManager sessions(config, games::GameCatalog::builtin(), ModelRegistry::builtin());
  const auto created = sessions.create("reference", inst.instance_id, Role::kPlayerB, "en");
  ASSERT_EQ(created.status, SessionStatus::kAwaitingHuman);
  const auto done = sessions.submit(created.session_id, reply);
  ASSERT_EQ(done.status, SessionStatus::kFinished);
  EXPECT_THROW(sessions.submit(created.session_id, reply), SessionStateError);
  EXPECT_THROW(sessions.get("nope"), UnknownSession);

  const fs::path human_path = transcript_path(dir / "human", {{Role::kPlayerA, "scripted:perfect"}, {Role::kPlayerB, "human"}}, inst);
  ASSERT_TRUE(fs::exists(human_path)) << human_path;
  const Transcript human = transcript_from_json(read_json_file(human_path));

  // Replay: the describer's recorded reply and the same answer, both scripted.
  std::string expression;
  for (const auto& e : human.events)
    if (e.actor == Role::kPlayerA && e.kind == EventKind::kReceiveResponse) expression = e.content.get<std::string>();
  ASSERT_FALSE(expression.empty());
  const Transcript scripted = play_scripted(inst, {{Role::kPlayerA, {expression}}, {Role::kPlayerB, {reply}}});

  EXPECT_EQ(human.outcome, scripted.outcome);
  ASSERT_EQ(human.events.size(), scripted.events.size());
  for (size_t i = 0; i < human.events.size(); ++i) EXPECT_EQ(to_json(human.events[i]), to_json(scripted.events[i]));
}

}  // namespace
}  // namespace playbench
