#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "playbench/engine/runner.hpp"
#include "playbench/engine/template.hpp"
#include "playbench/errors.hpp"
#include "playbench/games/generators.hpp"
#include "playbench/games/quality.hpp"
#include "playbench/games/taboo.hpp"
#include "playbench/games/wordle.hpp"
#include "playbench/interface/cli.hpp"
#include "playbench/metrics/export.hpp"
#include "playbench/metrics/kendall.hpp"

namespace py = pybind11;
using namespace playbench;

// Structured values cross the boundary as JSON text; the Python package
// decodes them.
PYBIND11_MODULE(_core, m) {
  m.doc() = "Dialogue-game benchmark engine";
  m.attr("__version__") = PLAYBENCH_VERSION;

  py::register_exception<Error>(m, "PlaybenchError");

  m.def("wordle_feedback", [](const std::string& guess, const std::string& target) {
    std::vector<std::string> out;
    for (auto mark : games::wordle_feedback(guess, target)) {
      switch (mark) {
        case games::Mark::kCorrectPosition: out.push_back("correct"); break;
        case games::Mark::kInWord: out.push_back("in_word"); break;
        case games::Mark::kAbsent: out.push_back("absent"); break;
      }
    }
    return out;
  }, py::arg("guess"), py::arg("target"));

  m.def("taboo_violation", [](const std::string& clue, const std::vector<std::string>& forbidden, bool exact_only)
            -> std::optional<std::string> { return games::find_taboo_violation(clue, forbidden, exact_only); },
        py::arg("clue"), py::arg("forbidden"), py::arg("exact_only") = false);

  m.def("instantiate_prompt", [](const std::string& tmpl, const std::map<std::string, std::string>& params) {
    return instantiate_prompt(tmpl, params);
  }, py::arg("template"), py::arg("params"));

  m.def("generate_instances_json",
        [](const std::string& game, int n, uint64_t seed, const std::optional<std::string>& word_pool) {
          std::optional<games::WordPool> pool;
          if (word_pool) pool = games::read_word_pool(*word_pool);
          return to_json(games::generate_instances(game, n, seed, pool)).dump();
        },
        py::arg("game"), py::arg("n"), py::arg("seed") = 42, py::arg("word_pool") = std::nullopt);

  m.def("episode_quality_json", [](const std::string& transcript_json) {
    const Transcript t = transcript_from_json(json::parse(transcript_json));
    return games::episode_quality(parse_flow(t.meta.game), t);
  }, py::arg("transcript_json"));

  m.def("score_run_json", [](const std::string& results_dir, bool exclude_backend_failures) {
    json out = json::array();
    for (const auto& r : metrics::score_run(results_dir, {exclude_backend_failures, false}))
      out.push_back(metrics::to_json(r));
    return out.dump();
  }, py::arg("results_dir"), py::arg("exclude_backend_failures") = false);

  m.def("export_leaderboard", [](const std::string& results_dir, const std::string& format) {
    return metrics::export_leaderboard(metrics::score_run(results_dir), metrics::parse_export_format(format));
  }, py::arg("results_dir"), py::arg("format") = "csv");

  m.def("kendall_tau", [](const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    const auto r = metrics::kendall_tau(a, b);
    return py::make_tuple(r.tau, r.p_value, r.n_common);
  }, py::arg("a"), py::arg("b"));

  m.def("kendall_tau_b", [](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("rankings differ in length");
    return metrics::kendall_tau_b(x, y);
  }, py::arg("x"), py::arg("y"));

  m.def("run_benchmark_json",
        [](const std::vector<std::string>& instance_paths, const std::vector<std::string>& models,
           const std::string& results_dir, uint64_t seed, const std::string& language, int jobs, bool fixed,
           const std::optional<std::string>& word_pool) {
          RunPlan plan;
          std::vector<std::filesystem::path> paths(instance_paths.begin(), instance_paths.end());
          plan.instance_files = load_instance_files(paths);
          for (const auto& m : models) plan.pairings.push_back(parse_pairing(m));
          plan.results_dir = results_dir;
          plan.seed = seed;
          plan.language = language;
          plan.jobs = jobs;
          if (word_pool) plan.word_pool = wordle_pool_words(*word_pool);
          RunOptions options;
          if (fixed) options.clock = fixed_clock();
          RunSummary s;
          {
            py::gil_scoped_release release;
            s = run_benchmark(plan, options);
          }
          return json{{"played", s.played},
                      {"skipped", s.skipped},
                      {"success", s.success},
                      {"loss", s.loss},
                      {"aborted", s.aborted},
                      {"backend_failures", s.backend_failures},
                      {"manifest", s.manifest.string()}}
              .dump();
        },
        py::arg("instance_paths"), py::arg("models"), py::arg("results_dir"), py::arg("seed") = 42,
        py::arg("language") = "en", py::arg("jobs") = 1, py::arg("fixed_clock") = false,
        py::arg("word_pool") = std::nullopt);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
