#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "games/definition.hpp"
#include "games/running_game.hpp"

namespace games::server {

// ---------------------------------------------------------------------------
// Requests. One struct per endpoint; the HTTP layer only translates.

struct ListDefinitions {};
struct GetDefinition { std::string name; };
struct PutDefinition { std::string name; std::string document; std::string token; };
struct CreateGame { std::string definition; std::optional<std::uint64_t> seed; };
struct Join { std::string game_id; std::string player_name; PlayerKind kind = PlayerKind::Human; };
struct SubmitEvent { std::string game_id; int player_id = 0; Event event; };
struct GetState { std::string game_id; };
struct GetCommands { std::string game_id; std::uint64_t since = 0; };
struct SaveGame { std::string game_id; };
struct LoadGame { std::string game_id; };

using Request = std::variant<ListDefinitions, GetDefinition, PutDefinition, CreateGame, Join,
                             SubmitEvent, GetState, GetCommands, SaveGame, LoadGame>;

struct Response {
  int status = 200;
  nlohmann::json body;
  std::vector<Command> broadcast;
};

// ---------------------------------------------------------------------------

/// Definitions and running games, plus the data directory they persist to.
///
/// Locking: `mutex_` guards the two maps; each game has its own mutex so
/// events on one game are totally ordered while different games proceed in
/// parallel. Readers take the game mutex too, so they never see a half
/// applied event.
class GameStore {
 public:
  /// Loads builtin definitions, then any `definitions/*.game.json` under
  /// data_dir (overriding builtins of the same name). Creates data_dir.
  GameStore(std::filesystem::path data_dir, std::string editor_token);

  const std::filesystem::path& data_dir() const noexcept { return data_dir_; }
  const std::string& editor_token() const noexcept { return editor_token_; }

  std::vector<std::string> definition_names() const;
  std::optional<GameDefinition> definition(const std::string& name) const;
  void put_definition(const std::string& name, GameDefinition def, const std::string& text);

  /// Runs `fn` on the game under its lock. Throws GameError(NotFound).
  template <typename Fn>
  auto with_game(const std::string& id, Fn&& fn) {
    auto slot = find_slot(id);
    std::lock_guard lock(slot->mutex);
    return fn(slot->game);
  }

  std::string add_game(RunningGame game);
  std::string next_game_id();

  /// Atomic write: temp file, then rename. Throws NotFound or IoError.
  void persist_game(const std::string& id);
  /// Throws NotFound when no snapshot file exists, CorruptSnapshot when it
  /// cannot be parsed.
  RunningGame load_game(const std::string& id);

  std::filesystem::path snapshot_path(const std::string& id) const;

  /// Test hook run between the temp write and the rename.
  std::function<void(const std::filesystem::path& temp)> before_rename;

 private:
  struct Slot {
    std::mutex mutex;
    RunningGame game;
  };

  std::shared_ptr<Slot> find_slot(const std::string& id) const;
  void write_snapshot(const std::string& id, const std::string& text);

  std::filesystem::path data_dir_;
  std::string editor_token_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, GameDefinition> definitions_;
  std::map<std::string, std::shared_ptr<Slot>> games_;
  std::uint64_t id_counter_ = 0;
};

Response handle_request(GameStore& store, const Request& req);

// ---------------------------------------------------------------------------

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "data";
  std::string editor_token;

  /// Reads a JSON config file, then applies GAMES_LISTEN, GAMES_DATA_DIR and
  /// GAMES_EDITOR_TOKEN overrides. Throws std::runtime_error on bad input,
  /// including an empty editor token.
  static ServerConfig load(const std::filesystem::path& path,
                           const std::function<std::optional<std::string>(const char*)>& getenv);
};

/// Splits "host:port".
std::pair<std::string, int> parse_listen(const std::string& listen);

/// HTTP front end. Owns nothing but the listener.
class HttpServer {
 public:
  explicit HttpServer(GameStore& store);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace games::server
