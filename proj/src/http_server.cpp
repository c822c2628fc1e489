#include <httplib.h>

#include "games/codec.hpp"
#include "games/error.hpp"
#include "games/server.hpp"

namespace games::server {
namespace {

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

void bad_request(httplib::Response& res, const std::string& reason) {
  res.status = 400;
  res.set_content(json{{"code", "BadRequest"}, {"reason", reason}}.dump(), "application/json");
}

std::optional<json> body_json(const httplib::Request& req, httplib::Response& res) {
  if (req.body.empty()) return json::object();
  try {
    auto j = json::parse(req.body);
    if (!j.is_object()) {
      bad_request(res, "request body must be a JSON object");
      return std::nullopt;
    }
    return j;
  } catch (const json::parse_error& e) {
    bad_request(res, e.what());
    return std::nullopt;
  }
}

std::string bearer_token(const httplib::Request& req) {
  const auto header = req.get_header_value("Authorization");
  const std::string prefix = "Bearer ";
  if (header.compare(0, prefix.size(), prefix) != 0) return {};
  return header.substr(prefix.size());
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(GameStore& s) : store(s) {}

  GameStore& store;
  httplib::Server svr;

  // Runs a handler that may throw while decoding the body.
  template <typename Fn>
  void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const GameError& e) {
      bad_request(res, e.what());
    } catch (const json::exception& e) {
      bad_request(res, e.what());
    }
  }

  void routes() {
    svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                             {"Access-Control-Allow-Headers", "Authorization, Content-Type"},
                             {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"}});
    svr.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    svr.Get("/definitions", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, handle_request(store, ListDefinitions{}));
    });
    svr.Get(R"(/definitions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_request(store, GetDefinition{req.matches[1]}));
    });
    svr.Put(R"(/definitions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_request(store, PutDefinition{req.matches[1], req.body, bearer_token(req)}));
    });

    svr.Post("/games", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = body_json(req, res);
      if (!body) return;
      guarded(res, [&] {
        CreateGame r{body->at("definition").get<std::string>(), std::nullopt};
        if (body->contains("seed") && !(*body)["seed"].is_null()) {
          r.seed = (*body)["seed"].get<std::uint64_t>();
        }
        reply(res, handle_request(store, r));
      });
    });
    svr.Post(R"(/games/([^/]+)/join)", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = body_json(req, res);
      if (!body) return;
      guarded(res, [&] {
        Join r{req.matches[1], body->at("name").get<std::string>(), PlayerKind::Human};
        if (body->contains("kind")) {
          auto kind = player_kind_from((*body)["kind"].get<std::string>());
          if (!kind) return bad_request(res, "kind must be human or robot");
          r.kind = *kind;
        }
        reply(res, handle_request(store, r));
      });
    });
    svr.Post(R"(/games/([^/]+)/events)",
             [this](const httplib::Request& req, httplib::Response& res) {
               auto body = body_json(req, res);
               if (!body) return;
               guarded(res, [&] {
                 SubmitEvent r{req.matches[1], body->at("player").get<int>(),
                               event_from_json(body->at("event"))};
                 reply(res, handle_request(store, r));
               });
             });
    svr.Get(R"(/games/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_request(store, GetState{req.matches[1]}));
    });
    svr.Get(R"(/games/([^/]+)/commands)",
            [this](const httplib::Request& req, httplib::Response& res) {
              GetCommands r{req.matches[1], 0};
              if (req.has_param("since")) {
                try {
                  r.since = std::stoull(req.get_param_value("since"));
                } catch (const std::exception&) {
                  return bad_request(res, "since must be a non-negative integer");
                }
              }
              reply(res, handle_request(store, r));
            });
    svr.Post(R"(/games/([^/]+)/save)", [this](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_request(store, SaveGame{req.matches[1]}));
    });
    svr.Post(R"(/games/([^/]+)/load)", [this](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_request(store, LoadGame{req.matches[1]}));
    });
  }
};

HttpServer::HttpServer(GameStore& store) : impl_(std::make_unique<Impl>(store)) { impl_->routes(); }

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->svr.bind_to_any_port(host);
  return impl_->svr.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->svr.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->svr.stop();
}

}  // namespace games::server
