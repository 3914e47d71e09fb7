#include "mcsp/server.hpp"

#include <iostream>
#include <thread>

#include "httplib.h"
#include "mcsp/json_io.hpp"

namespace mcsp {

namespace {

using J = nlohmann::json;

void reply(httplib::Response& res, int status, const J& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void error(httplib::Response& res, int status, const std::string& message) {
  reply(res, status, J{{"error", message}});
}

void rejected(httplib::Response& res, const std::vector<Diagnostic>& ds) {
  reply(res, 422, J{{"error", "source rejected"}, {"diagnostics", mcsp::json::diagnostics(ds)}});
}

std::optional<J> body_json(const httplib::Request& req, httplib::Response& res) {
  J body = J::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    error(res, 400, "request body must be a JSON object");
    return std::nullopt;
  }
  return body;
}

}  // namespace

void install_routes(httplib::Server& server, SessionStore& store, ServerOptions opts) {
  server.set_default_headers({{"Access-Control-Allow-Origin", opts.allow_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    auto body = body_json(req, res);
    if (!body) return;
    if (!body->contains("source") || !(*body)["source"].is_string() || !body->contains("name") ||
        !(*body)["name"].is_string())
      return error(res, 400, "expected {\"source\": string, \"name\": string}");
    try {
      // Parsing and elaboration happen before the session becomes visible.
      Session s = Session::from_source((*body)["source"], (*body)["name"]);
      J state = s.state_json();
      std::string id = store.create(std::move(s));
      reply(res, 201, J{{"id", id}, {"state", state}});
    } catch (const ParseError& e) {
      rejected(res, {e.diagnostic()});
    } catch (const SourceRejected& e) {
      rejected(res, e.diagnostics());
    }
  });

  server.Get("/sessions/:id", [&store](const httplib::Request& req, httplib::Response& res) {
    auto h = store.find(req.path_params.at("id"));
    if (!h) return error(res, 404, "unknown session");
    std::lock_guard<std::mutex> g(*h->lock);
    reply(res, 200, h->session->state_json());
  });

  server.Post("/sessions/:id/step", [&store](const httplib::Request& req, httplib::Response& res) {
    auto h = store.find(req.path_params.at("id"));
    if (!h) return error(res, 404, "unknown session");
    auto body = body_json(req, res);
    if (!body) return;
    auto kind = body->contains("kind") && (*body)["kind"].is_string()
                    ? parse_step_kind((*body)["kind"].get<std::string>())
                    : std::nullopt;
    if (!kind) return error(res, 400, "kind must be one of ext, int, tick");
    if (!body->contains("index") || !(*body)["index"].is_number_unsigned())
      return error(res, 400, "index must be a non-negative integer");
    std::lock_guard<std::mutex> g(*h->lock);
    try {
      h->session->step(*kind, (*body)["index"].get<std::size_t>());
    } catch (const InvalidChoice& e) {
      return error(res, 400, e.what());
    }
    reply(res, 200, h->session->state_json());
  });

  server.Post("/sessions/:id/undo", [&store](const httplib::Request& req, httplib::Response& res) {
    auto h = store.find(req.path_params.at("id"));
    if (!h) return error(res, 404, "unknown session");
    std::lock_guard<std::mutex> g(*h->lock);
    if (!h->session->undo()) return error(res, 400, "nothing to undo");
    reply(res, 200, h->session->state_json());
  });

  server.Delete("/sessions/:id", [&store](const httplib::Request& req, httplib::Response& res) {
    if (!store.erase(req.path_params.at("id"))) return error(res, 404, "unknown session");
    res.status = 204;
  });

  server.Get("/sessions/:id/lts", [&store, opts](const httplib::Request& req, httplib::Response& res) {
    auto h = store.find(req.path_params.at("id"));
    if (!h) return error(res, 404, "unknown session");
    std::optional<Process> root;
    {
      std::lock_guard<std::mutex> g(*h->lock);
      root = h->session->initial();
    }
    // The environment is immutable; exploration runs without the lock.
    Lts lts = build_lts(*root, &h->session->env(), opts.lts_limits);
    reply(res, 200, mcsp::json::lts(lts));
  });

  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      error(res, 500, e.what());
    } catch (...) {
      error(res, 500, "internal error");
    }
  });
}

int serve(const std::string& host, int port, ServerOptions opts) {
  httplib::Server server;
  auto store = std::make_shared<SessionStore>();
  install_routes(server, *store, opts);
  std::thread sweeper([store] {
    for (;;) {
      std::this_thread::sleep_for(std::chrono::minutes(1));
      store->sweep();
    }
  });
  sweeper.detach();
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace mcsp
