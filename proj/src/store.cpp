#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "games/builtin.hpp"
#include "games/codec.hpp"
#include "games/dsl.hpp"
#include "games/error.hpp"
#include "games/rule_engine.hpp"
#include "games/server.hpp"

namespace games::server {
namespace fs = std::filesystem;

namespace {

bool safe_name(const std::string& s) {
  static const std::regex re("[A-Za-z0-9][A-Za-z0-9._-]*");
  return s.size() <= 128 && std::regex_match(s, re);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw GameError(Errc::IoError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write(const fs::path& target, const std::string& text,
                  const std::function<void(const fs::path&)>& before_rename) {
  auto temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw GameError(Errc::IoError, "cannot write " + temp.string());
    out << text;
    out.flush();
    if (!out) throw GameError(Errc::IoError, "short write to " + temp.string());
  }
  if (before_rename) before_rename(temp);
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) throw GameError(Errc::IoError, "rename to " + target.string() + ": " + ec.message());
}

}  // namespace

GameStore::GameStore(fs::path data_dir, std::string editor_token)
    : data_dir_(std::move(data_dir)), editor_token_(std::move(editor_token)) {
  std::error_code ec;
  fs::create_directories(data_dir_ / "definitions", ec);
  if (!ec) fs::create_directories(data_dir_ / "games", ec);
  if (ec) throw GameError(Errc::IoError, "cannot create " + data_dir_.string() + ": " + ec.message());

  for (auto& [name, def] : builtin_corpus()) definitions_.emplace(name, std::move(def));

  for (const auto& entry : fs::directory_iterator(data_dir_ / "definitions")) {
    const auto filename = entry.path().filename().string();
    const std::string suffix = ".game.json";
    if (filename.size() <= suffix.size() ||
        filename.compare(filename.size() - suffix.size(), suffix.size(), suffix) != 0) {
      continue;
    }
    const auto name = filename.substr(0, filename.size() - suffix.size());
    auto parsed = parse_game_definition(read_file(entry.path()));
    if (!parsed.ok()) {
      std::cerr << "skipping " << entry.path() << ": "
                << to_string(parsed.diagnostics.front().code) << " "
                << parsed.diagnostics.front().message << "\n";
      continue;
    }
    definitions_[name] = std::move(*parsed.definition);
  }
}

std::vector<std::string> GameStore::definition_names() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> names;
  for (const auto& [name, def] : definitions_) names.push_back(name);
  return names;
}

std::optional<GameDefinition> GameStore::definition(const std::string& name) const {
  std::shared_lock lock(mutex_);
  auto it = definitions_.find(name);
  if (it == definitions_.end()) return std::nullopt;
  return it->second;
}

void GameStore::put_definition(const std::string& name, GameDefinition def,
                               const std::string& text) {
  std::unique_lock lock(mutex_);
  atomic_write(data_dir_ / "definitions" / (name + ".game.json"), text, nullptr);
  definitions_[name] = std::move(def);
}

std::shared_ptr<GameStore::Slot> GameStore::find_slot(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = games_.find(id);
  if (it == games_.end()) throw GameError(Errc::NotFound, "no game '" + id + "'");
  return it->second;
}

std::string GameStore::next_game_id() {
  std::unique_lock lock(mutex_);
  for (;;) {
    auto id = "g" + std::to_string(++id_counter_);
    if (!games_.contains(id) && !fs::exists(snapshot_path(id))) return id;
  }
}

std::string GameStore::add_game(RunningGame game) {
  auto slot = std::make_shared<Slot>();
  auto id = game.id;
  slot->game = std::move(game);
  std::unique_lock lock(mutex_);
  games_[id] = std::move(slot);
  return id;
}

fs::path GameStore::snapshot_path(const std::string& id) const {
  return data_dir_ / "games" / (id + ".json");
}

void GameStore::write_snapshot(const std::string& id, const std::string& text) {
  atomic_write(snapshot_path(id), text, before_rename);
}

void GameStore::persist_game(const std::string& id) {
  auto text = with_game(id, [](const RunningGame& g) { return snapshot(g); });
  write_snapshot(id, text);
}

RunningGame GameStore::load_game(const std::string& id) {
  if (!safe_name(id)) throw GameError(Errc::NotFound, "no saved game '" + id + "'");
  const auto path = snapshot_path(id);
  if (!fs::exists(path)) throw GameError(Errc::NotFound, "no saved game '" + id + "'");
  auto rg = restore(read_file(path));
  if (rg.id != id) throw GameError(Errc::CorruptSnapshot, "snapshot holds game '" + rg.id + "'");
  return rg;
}

// ---------------------------------------------------------------------------

namespace {

Response error_response(int status, std::string code, std::string reason) {
  return Response{status, {{"code", std::move(code)}, {"reason", std::move(reason)}}, {}};
}

int status_for(Errc code) {
  switch (code) {
    case Errc::NotFound:
      return 404;
    case Errc::WrongState:
    case Errc::GameFull:
    case Errc::LockedCell:
      return 409;
    case Errc::InvalidDefinition:
      return 422;
    case Errc::IoError:
    case Errc::CorruptSnapshot:
      return 500;
    default:
      return 400;
  }
}

json commands_json(const std::vector<Command>& cmds) {
  json out = json::array();
  for (const auto& c : cmds) out.push_back(to_json(c));
  return out;
}

json state_body(const RunningGame& rg) {
  return {{"snapshot", to_json(rg)}, {"view", to_json(view_of(rg))}, {"last_seq", rg.last_seq}};
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Handler {
  GameStore& store;

  Response operator()(const ListDefinitions&) const {
    return {200, {{"definitions", store.definition_names()}}, {}};
  }

  Response operator()(const GetDefinition& r) const {
    auto def = store.definition(r.name);
    if (!def) return error_response(404, "NotFound", "no definition '" + r.name + "'");
    return {200, to_json(*def), {}};
  }

  Response operator()(const PutDefinition& r) const {
    if (store.editor_token().empty() || r.token != store.editor_token()) {
      return error_response(401, "AuthError", "editing definitions needs a valid editor token");
    }
    if (!safe_name(r.name)) return error_response(400, "BadRequest", "bad definition name");
    auto parsed = parse_game_definition(r.document);
    if (!parsed.ok()) {
      json diags = json::array();
      for (const auto& d : parsed.diagnostics) {
        diags.push_back({{"code", std::string(to_string(d.code))},
                         {"message", d.message},
                         {"location", d.location}});
      }
      return {422, {{"code", "Invalid"}, {"reason", "definition has errors"},
                    {"diagnostics", std::move(diags)}}, {}};
    }
    auto text = serialize_definition(*parsed.definition);
    store.put_definition(r.name, *parsed.definition, text);
    return {200, {{"name", r.name}, {"definition", to_json(*parsed.definition)}}, {}};
  }

  Response operator()(const CreateGame& r) const {
    auto def = store.definition(r.definition);
    if (!def) return error_response(404, "NotFound", "no definition '" + r.definition + "'");
    const auto seed = r.seed.value_or(entropy_seed());
    auto rg = create_running_game(std::move(*def), store.next_game_id(), seed);
    json body = state_body(rg);
    body["id"] = rg.id;
    body["seed"] = seed;
    store.add_game(std::move(rg));
    return {201, std::move(body), {}};
  }

  Response operator()(const Join& r) const {
    if (r.player_name.empty()) return error_response(400, "BadRequest", "player name is empty");
    return store.with_game(r.game_id, [&](RunningGame& g) -> Response {
      auto result = step(g, Event::player_join(r.player_name, r.kind));
      g = std::move(result.game);
      const auto& p = g.players.back();
      return {200, {{"player", to_json(p)}, {"commands", commands_json(result.commands)},
                    {"last_seq", g.last_seq}}, result.commands};
    });
  }

  Response operator()(const SubmitEvent& r) const {
    Event ev = r.event;
    if (ev.kind == EventKind::PlayerJoin || ev.kind == EventKind::TerminationCheck) {
      return error_response(400, "BadRequest",
                            std::string(to_string(ev.kind)) + " cannot be submitted as an event");
    }
    if (ev.actor && *ev.actor != r.player_id) {
      return error_response(409, "Rejected", "event actor differs from the submitting player");
    }
    ev.actor = r.player_id;

    bool terminated = false;
    auto response = store.with_game(r.game_id, [&](RunningGame& g) -> Response {
      if (!g.has_player(r.player_id)) {
        return error_response(409, "Rejected", "player " + std::to_string(r.player_id) +
                                                   " has not joined this game");
      }
      if (ev.kind == EventKind::TileClick) {
        if (!ev.coord || !g.board.in_bounds(*ev.coord)) {
          return error_response(400, "BadRequest", "tile coordinate missing or off the board");
        }
        if (ev.value && *ev.value != 0 && !g.def().value_domain.contains(*ev.value)) {
          return error_response(400, "BadRequest", "value outside the game's domain");
        }
      }
      auto result = step(g, ev);
      if (result.fired.empty()) {
        auto why = explain_rejection(g, ev);
        return error_response(409, why.code, why.reason);
      }
      g = std::move(result.game);
      terminated = g.state == LifecycleState::Terminated;
      json body{{"fired", result.fired},
                {"commands", commands_json(result.commands)},
                {"last_seq", g.last_seq},
                {"state", std::string(to_string(g.state))}};
      return {200, std::move(body), std::move(result.commands)};
    });

    if (terminated) {
      try {
        store.persist_game(r.game_id);
      } catch (const std::exception& e) {
        std::cerr << "save-on-terminate failed for " << r.game_id << ": " << e.what() << "\n";
      }
    }
    return response;
  }

  Response operator()(const GetState& r) const {
    return store.with_game(r.game_id,
                           [](const RunningGame& g) { return Response{200, state_body(g), {}}; });
  }

  Response operator()(const GetCommands& r) const {
    return store.with_game(r.game_id, [&](const RunningGame& g) {
      std::vector<Command> out;
      for (const auto& c : command_log(g)) {
        if (c.seq > r.since) out.push_back(c);
      }
      return Response{200, {{"commands", commands_json(out)}, {"last_seq", g.last_seq}}, {}};
    });
  }

  Response operator()(const SaveGame& r) const {
    store.persist_game(r.game_id);
    return {200, {{"saved", r.game_id}}, {}};
  }

  Response operator()(const LoadGame& r) const {
    auto rg = store.load_game(r.game_id);
    json body = state_body(rg);
    body["id"] = rg.id;
    store.add_game(std::move(rg));
    return {200, std::move(body), {}};
  }
};

}  // namespace

Response handle_request(GameStore& store, const Request& req) {
  try {
    return std::visit(Handler{store}, req);
  } catch (const GameError& e) {
    return error_response(status_for(e.code()), std::string(to_string(e.code())), e.what());
  }
}

// ---------------------------------------------------------------------------

std::pair<std::string, int> parse_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw std::runtime_error("listen address must be host:port, got '" + listen + "'");
  }
  const auto host = listen.substr(0, colon);
  int port = -1;
  try {
    std::size_t used = 0;
    port = std::stoi(listen.substr(colon + 1), &used);
    if (used != listen.size() - colon - 1) port = -1;
  } catch (const std::exception&) {
    port = -1;
  }
  if (port < 0 || port > 65535) throw std::runtime_error("bad port in '" + listen + "'");
  return {host, port};
}

ServerConfig ServerConfig::load(
    const fs::path& path, const std::function<std::optional<std::string>(const char*)>& getenv) {
  ServerConfig cfg;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const GameError& e) {
    throw std::runtime_error(e.what());
  } catch (const json::exception& e) {
    throw std::runtime_error("config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "listen" && key != "data_dir" && key != "editor_token") {
      throw std::runtime_error("unknown config field '" + key + "'");
    }
    if (!value.is_string()) throw std::runtime_error("config field '" + key + "' must be a string");
  }
  if (j.contains("listen")) std::tie(cfg.host, cfg.port) = parse_listen(j["listen"]);
  if (j.contains("data_dir")) {
    fs::path dir = j["data_dir"].get<std::string>();
    cfg.data_dir = dir.is_relative() ? path.parent_path() / dir : dir;
  }
  if (j.contains("editor_token")) cfg.editor_token = j["editor_token"].get<std::string>();

  if (auto v = getenv("GAMES_LISTEN")) std::tie(cfg.host, cfg.port) = parse_listen(*v);
  if (auto v = getenv("GAMES_DATA_DIR")) cfg.data_dir = *v;
  if (auto v = getenv("GAMES_EDITOR_TOKEN")) cfg.editor_token = *v;

  if (cfg.editor_token.empty()) throw std::runtime_error("editor_token must not be empty");
  return cfg;
}

}  // namespace games::server
