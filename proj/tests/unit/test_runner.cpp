#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "playbench/engine/runner.hpp"
#include "playbench/errors.hpp"
#include "playbench/games/generators.hpp"
#include "playbench/interface/cli.hpp"
#include "playbench/metrics/aggregate.hpp"
#include "test_support.hpp"

namespace playbench {
namespace {

using namespace playbench::testing;
namespace fs = std::filesystem;
constexpr Role A = Role::kPlayerA;
constexpr Role B = Role::kPlayerB;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> transcripts_below(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.path().filename() == "transcript.json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

RunPlan reference_plan(const fs::path& results, int n = 3) {
  RunPlan plan;
  plan.instance_files = {games::generate_instances("reference", n, 42)};
  plan.pairings = {{"scripted:perfect_reference"}};
  plan.results_dir = results;
  return plan;
}

TEST(Runner, PairingParsingAndDirs) {
  EXPECT_EQ(parse_pairing("a+b"), (Pairing{"a", "b"}));
  EXPECT_EQ(parse_pairing("a"), (Pairing{"a"}));
  EXPECT_EQ(pairing_dir({{A, "org/model:1"}}), "org_model_1");
  EXPECT_EQ(pairing_dir({{A, "a"}, {B, "b"}}), "a--b");
}

TEST(Runner, WritesTranscriptsAndManifest) {
  TempDir dir;
  RunOptions options;
  options.clock = fixed_clock();
  const auto s = run_benchmark(reference_plan(dir.path()), options);
  EXPECT_EQ(s.played, 3u);
  EXPECT_EQ(s.success, 3u);
  EXPECT_EQ(transcripts_below(dir.path()).size(), 3u);
  ASSERT_TRUE(fs::exists(s.manifest));
  const json manifest = read_json_file(s.manifest);
  EXPECT_EQ(manifest.at("seed"), 42);
  EXPECT_EQ(manifest.at("runs").size(), 3u);
  const auto first = s.episodes.at(0);
  EXPECT_TRUE(fs::exists(dir / first.transcript.string()));
  EXPECT_EQ(first.transcript.generic_string(),
            "scripted_perfect_reference/reference/default/" + std::to_string(first.instance_id) + "/transcript.json");
}

TEST(Runner, SecondRunSkipsExistingTranscripts) {
  TempDir dir;
  run_benchmark(reference_plan(dir.path()));
  const auto again = run_benchmark(reference_plan(dir.path()));
  EXPECT_EQ(again.played, 0u);
  EXPECT_EQ(again.skipped, 3u);
  EXPECT_EQ(again.success, 3u);
  auto plan = reference_plan(dir.path());
  plan.skip_existing = false;
  EXPECT_EQ(run_benchmark(plan).played, 3u);
}

TEST(Runner, UnknownModelFailsBeforeAnyEpisode) {
  TempDir dir;
  auto plan = reference_plan(dir.path());
  plan.pairings = {{"scripted:perfect_reference"}, {"gpt-x"}};
  EXPECT_THROW(run_benchmark(plan), UnresolvableModel);
  EXPECT_FALSE(fs::exists(dir / "scripted_perfect_reference"));
}

TEST(Runner, UnknownGameAndBadPairing) {
  TempDir dir;
  auto plan = reference_plan(dir.path());
  plan.games = {"chess"};
  EXPECT_THROW(run_benchmark(plan), UnknownGame);
  plan = reference_plan(dir.path());
  plan.pairings = {{"scripted:perfect", "scripted:perfect", "scripted:perfect"}};
  EXPECT_THROW(run_benchmark(plan), PlanError);
}

TEST(Runner, ParallelRunMatchesSequential) {
  TempDir a, b;
  RunOptions options;
  options.clock = fixed_clock();
  auto plan = reference_plan(a.path(), 12);
  run_benchmark(plan, options);
  plan.results_dir = b.path();
  plan.jobs = 4;
  run_benchmark(plan, options);
  const auto ta = transcripts_below(a.path());
  const auto tb = transcripts_below(b.path());
  ASSERT_EQ(ta.size(), tb.size());
  for (size_t i = 0; i < ta.size(); ++i) EXPECT_EQ(slurp(ta[i]), slurp(tb[i]));
}

// ---- command line ----

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(cli({"run", "--games", "chess", "--models", "scripted:perfect", "--results", dir.path().string()}).code,
            kExitError);
  EXPECT_EQ(cli({"run", "--games", "reference", "--n", "2", "--models", "gpt-x", "--results", dir.path().string()})
                .code,
            kExitError);
  EXPECT_EQ(cli({"run", "--games", "reference", "--n", "2", "--models", "scripted:perfect_reference", "--results",
                 dir.path().string()})
                .code,
            kExitOk);
  EXPECT_NE(cli({"bogus"}).code, kExitOk);
}

TEST(Cli, BackendFailuresArePartial) {
  TempDir dir;
  write_file_atomic(dir / "models.json",
                    json::array({{{"model_id", "mute"}, {"backend", "scripted"}, {"script", json::array()}}}).dump());
  const auto r = cli({"run", "--games", "reference", "--n", "2", "--models", "mute", "--registry",
                      (dir / "models.json").string(), "--results", (dir / "results").string()});
  EXPECT_EQ(r.code, kExitPartial) << r.err;
  EXPECT_NE(r.out.find("2 backend failures"), std::string::npos) << r.out;
}

TEST(Cli, UnknownLanguageWarns) {
  TempDir dir;
  const auto r = cli({"run", "--games", "reference", "--n", "1", "--models", "scripted:perfect_reference", "--lang",
                      "xx", "--results", dir.path().string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning: game 'reference' has no 'xx' prompts; playing it in en"), std::string::npos);
}

TEST(Cli, InstancesAreReproducible) {
  const auto a = cli({"instances", "reference", "--n", "5", "--seed", "9"});
  const auto b = cli({"instances", "reference", "--n", "5", "--seed", "9"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(instance_file_from_json(json::parse(a.out)).instances.size(), 5u);
  const auto pool = data_path("taboo_pool.txt").string();
  EXPECT_EQ(cli({"instances", "taboo", "--n", "3", "--word-pool", pool}).out,
            cli({"instances", "taboo", "--n", "3", "--word-pool", pool}).out);
}

TEST(Cli, Correlate) {
  TempDir dir;
  write_file_atomic(dir / "a.csv", "model,score\nm1,3\nm2,2\nm3,1\n");
  write_file_atomic(dir / "b.csv", "model,score\nm1,30\nm2,20\nm3,10\nm4,0\n");
  const auto r = cli({"correlate", (dir / "a.csv").string(), (dir / "b.csv").string(), "--pairs",
                      (dir / "pairs.csv").string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, 9), "tau=1.000");
  EXPECT_NE(r.err.find("m4"), std::string::npos);
  EXPECT_EQ(slurp(dir / "pairs.csv"), "model,rank_a,rank_b\nm1,1,1\nm2,2,2\nm3,3,3\n");
  EXPECT_EQ(format_correlation(std::nan(""), std::nan(""), 2), "tau=nan p=nan n=2");
}

TEST(Cli, LeaderboardCsv) {
  TempDir dir;
  run_benchmark(reference_plan(dir.path()));
  const auto r = cli({"leaderboard", dir.path().string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "model,sc,%pl,qs\nscripted:perfect_reference,100.00,100.00,100.00\n");
  EXPECT_EQ(cli({"leaderboard", (dir / "none").string()}).code, kExitError);
}

// Scores recorded human play: four games whose qualities are 72, 80.5,
// 95.2 and 100 with nothing aborted.
TEST(Cli, ScoresHumanTranscripts) {
  TempDir dir;
  int64_t id = 0;
  auto save = [&](Transcript t) {
    write_file_atomic(dir / ("human/" + t.meta.game + "/default/" + std::to_string(t.meta.instance_id) +
                             "/transcript.json"),
                      dump_transcript(t));
  };
  auto wordle = [&](int wrong, bool solve) {
    std::vector<std::string> guesses(static_cast<size_t>(wrong), "guess: slate");
    if (solve) guesses.push_back("guess: crane");
    save(play_scripted(wordle_instance("crane", id++), {{A, guesses}}, "human"));
  };
  for (int i = 0; i < 6; ++i) wordle(0, true);
  wordle(1, true);
  wordle(1, true);
  wordle(4, true);
  wordle(6, false);

  for (int i = 0; i < 100; ++i) {
    const bool first = i < 61;
    save(play_scripted(taboo_instance("plane", {"fly", "wing", "airport"}, id++),
                       {{A, {"CLUE: sky vehicle", "CLUE: has engines"}},
                        {B, first ? std::vector<std::string>{"GUESS: plane"}
                                  : std::vector<std::string>{"GUESS: bird", "GUESS: plane"}}},
                       "human"));
  }

  auto drawing = [&](const games::PixelGrid& target, const games::PixelGrid& drawn) {
    save(play_scripted(drawing_instance(target, id++),
                       {{A, {"Instruction: draw it", "Instruction: DONE"}}, {B, {drawn.render()}}}, "human"));
  };
  const auto exact = grid_of({0, 6, 12});
  for (int i = 0; i < 3; ++i) drawing(exact, exact);
  drawing(grid_of({0, 1}), grid_of({0, 1, 2}));  // F1 0.8
  const auto twelve = grid_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
  drawing(twelve, grid_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}));  // F1 0.96

  save(play_scripted(reference_instance(grid_of({0}), grid_of({1, 2}), grid_of({3, 4}), {1, 2, 3}, id++),
                     {{A, {"Expression: top left"}}, {B, {"Answer: first"}}}, "human"));

  const auto r = cli({"score", dir.path().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json reports = json::parse(r.out);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].at("model"), "human");
  EXPECT_EQ(reports[0].at("clemscore").dump(), "86.93");
  std::map<std::string, std::string> quality;
  for (const auto& g : reports[0].at("games")) quality[g.at("game")] = g.at("quality").dump();
  EXPECT_EQ(quality.at("wordle"), "72.0");
  EXPECT_EQ(quality.at("taboo"), "80.5");
  EXPECT_EQ(quality.at("drawing"), "95.2");
  EXPECT_EQ(quality.at("reference"), "100.0");
}

}  // namespace
}  // namespace playbench
