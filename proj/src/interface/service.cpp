#include "playbench/interface/service.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "playbench/metrics/export.hpp"

namespace playbench {

namespace fs = std::filesystem;

std::optional<fs::path> safe_results_path(const fs::path& root, const std::string& relative) {
  if (relative.empty()) return std::nullopt;
  const fs::path rel(relative);
  if (rel.is_absolute() || rel.has_root_name() || rel.has_root_directory()) return std::nullopt;
  for (const auto& part : rel)
    if (part == ".." || part == ".") return std::nullopt;
  const fs::path full = root / rel;
  // Symlinks must not lead outside the results directory either.
  std::error_code ec;
  const fs::path canon_root = fs::weakly_canonical(root, ec);
  if (ec) return std::nullopt;
  const fs::path canon = fs::weakly_canonical(full, ec);
  if (ec) return std::nullopt;
  const auto mismatch = std::mismatch(canon_root.begin(), canon_root.end(), canon.begin(), canon.end());
  if (mismatch.first != canon_root.end()) return std::nullopt;
  return full;
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, json{{"error", message}});
}

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
  try {
    json body = json::parse(req.body);
    if (!body.is_object()) throw json::type_error::create(302, "body must be a JSON object", nullptr);
    return body;
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("invalid JSON body: ") + e.what());
    return std::nullopt;
  }
}

}  // namespace

struct Service::Impl {
  SessionManager& sessions;
  ServiceOptions options;
  httplib::Server server;

  Impl(SessionManager& s, ServiceOptions o) : sessions(s), options(std::move(o)) { routes(); }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req, res);
      if (!body) return;
      try {
        const std::string game = body->at("game").get<std::string>();
        const json& id = body->at("instance_id");
        const int64_t instance_id = id.is_string() ? std::stoll(id.get<std::string>()) : id.get<int64_t>();
        const Role role = parse_role(body->value("human_role", "player_a"));
        const std::string language = body->value("language", "en");
        send_json(res, 201, to_json(sessions.create(game, instance_id, role, language)));
      } catch (const std::logic_error&) {
        send_error(res, 400, "instance_id must be an integer");
      } catch (const json::exception& e) {
        send_error(res, 400, std::string("bad session request: ") + e.what());
      } catch (const UnknownGame& e) {
        send_error(res, 404, e.what());
      } catch (const InvalidInstance& e) {
        send_error(res, 404, e.what());
      } catch (const Error& e) {
        send_error(res, 400, e.what());
      }
    });

    server.Get(R"(/sessions/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        send_json(res, 200, to_json(sessions.get(req.matches[1].str())));
      } catch (const UnknownSession& e) {
        send_error(res, 404, e.what());
      }
    });

    server.Post(R"(/sessions/([0-9a-f]+)/response)", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req, res);
      if (!body) return;
      if (!body->contains("text") || !(*body)["text"].is_string()) {
        send_error(res, 400, "body needs a string field 'text'");
        return;
      }
      try {
        send_json(res, 200, to_json(sessions.submit(req.matches[1].str(), (*body)["text"].get<std::string>())));
      } catch (const UnknownSession& e) {
        send_error(res, 404, e.what());
      } catch (const SessionStateError& e) {
        send_error(res, 409, e.what());
      }
    });

    server.Get("/leaderboard", [this](const httplib::Request&, httplib::Response& res) {
      try {
        send_json(res, 200, metrics::leaderboard_json(metrics::score_run(options.results_dir, options.score)));
      } catch (const EmptyRun&) {
        send_json(res, 200, json::array());
      } catch (const Error& e) {
        send_error(res, 500, e.what());
      }
    });

    server.Get("/transcripts", [this](const httplib::Request&, httplib::Response& res) {
      std::vector<std::string> paths;
      std::error_code ec;
      if (fs::is_directory(options.results_dir, ec)) {
        for (const auto& entry : fs::recursive_directory_iterator(options.results_dir, ec))
          if (entry.is_regular_file() && entry.path().filename() == "transcript.json")
            paths.push_back(entry.path().lexically_relative(options.results_dir).generic_string());
      }
      std::sort(paths.begin(), paths.end());
      send_json(res, 200, paths);
    });

    server.Get(R"(/transcripts/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string rel = req.matches[1].str();
      const auto path = safe_results_path(options.results_dir, rel);
      if (!path || path->filename() != "transcript.json") {
        send_error(res, 403, "path is outside the transcripts");
        return;
      }
      std::ifstream in(*path, std::ios::binary);
      if (!in) {
        send_error(res, 404, "no transcript at '" + rel + "'");
        return;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      res.status = 200;
      res.set_content(buf.str(), "application/json; charset=utf-8");
    });

    server.Get("/games", [this](const httplib::Request&, httplib::Response& res) {
      json out = json::array();
      for (const auto& file : sessions.instance_files()) {
        json ids = json::array();
        for (const auto& inst : file.instances) ids.push_back(inst.instance_id);
        const auto& spec = sessions.catalog().find(file.game);
        json langs = json::array();
        for (const auto& [lang, pack] : spec.locale_packs) langs.push_back(lang);
        json roles = json::array();
        for (Role r : spec.roles) roles.push_back(to_string(r));
        out.push_back({{"game", file.game}, {"instances", ids}, {"languages", langs}, {"roles", roles}});
      }
      send_json(res, 200, out);
    });
  }
};

Service::Service(SessionManager& sessions, ServiceOptions options)
    : impl_(std::make_unique<Impl>(sessions, std::move(options))) {}

Service::~Service() { stop(); }

bool Service::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int Service::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool Service::serve() { return impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_) impl_->server.stop();
}

bool Service::running() const { return impl_->server.is_running(); }

}  // namespace playbench
