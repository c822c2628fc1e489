#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "games/board.hpp"
#include "games/definition.hpp"

namespace games {

enum class PlayerKind { Human, Robot };

struct Player {
  int id = 0;  // dense, 1..n in join order
  std::string name;
  PlayerKind kind = PlayerKind::Human;

  bool operator==(const Player&) const = default;
};

enum class OutcomeKind { Winner, Draw, Abandoned };

struct Outcome {
  OutcomeKind kind = OutcomeKind::Draw;
  int winner = 0;  // player id, meaningful for Winner only

  static Outcome won_by(int player) { return {OutcomeKind::Winner, player}; }
  static Outcome draw() { return {OutcomeKind::Draw, 0}; }
  static Outcome abandoned() { return {OutcomeKind::Abandoned, 0}; }

  bool operator==(const Outcome&) const = default;
};

enum class EventKind { GameStart, TileClick, PlayerJoin, TerminationCheck };

struct Event {
  EventKind kind = EventKind::GameStart;
  std::optional<int> actor;
  std::optional<Coord> coord;        // TileClick
  std::optional<CellValue> value;    // TileClick, symbols games
  std::string name;                  // PlayerJoin
  PlayerKind player_kind = PlayerKind::Human;  // PlayerJoin

  static Event game_start(std::optional<int> actor = std::nullopt);
  static Event tile_click(int actor, Coord c, std::optional<CellValue> v = std::nullopt);
  static Event player_join(std::string name, PlayerKind kind);
  static Event termination_check();

  bool operator==(const Event&) const = default;
};

enum class CommandKind { SetTile, SetState, SetCurrentPlayer, SetWinner, PlayerJoined, Message };

/// A board- or state-mutating message for clients. Applying a game's
/// commands in seq order to its initial view reproduces the game.
struct Command {
  std::uint64_t seq = 0;
  CommandKind kind = CommandKind::Message;
  Coord coord;                           // SetTile
  CellValue value = 0;                   // SetTile
  LifecycleState state = LifecycleState::NotStarted;  // SetState
  std::optional<Outcome> outcome;        // SetState(Terminated)
  int player = 0;                        // SetCurrentPlayer, SetWinner
  Player joined;                         // PlayerJoined
  std::string text;                      // Message

  static Command set_tile(Coord c, CellValue v);
  static Command set_state(LifecycleState s, std::optional<Outcome> o = std::nullopt);
  static Command set_current_player(int id);
  static Command set_winner(int id);
  static Command player_joined(Player p);
  static Command message(std::string text);

  bool operator==(const Command&) const = default;
};

struct HistoryEntry {
  Event event;
  std::vector<Command> commands;

  bool operator==(const HistoryEntry&) const = default;
};

/// The per-match state machine: NotStarted -> Started -> Terminated.
struct RunningGame {
  std::string id;
  DefinitionPtr definition;
  Board board;
  std::vector<Player> players;
  std::optional<std::size_t> current;  // index into players
  LifecycleState state = LifecycleState::NotStarted;
  std::optional<Outcome> outcome;
  std::vector<HistoryEntry> history;
  std::uint64_t rng_seed = 0;
  std::uint64_t rng_draws = 0;
  std::uint64_t last_seq = 0;

  const GameDefinition& def() const { return *definition; }

  /// Player id whose turn it is, or 0 when no turn is defined.
  int current_player_id() const noexcept;
  bool has_player(int id) const noexcept;

  /// Assigns the next dense seq number.
  Command stamp(Command cmd) { cmd.seq = ++last_seq; return cmd; }

  bool operator==(const RunningGame& other) const;
};

/// Throws GameError(InvalidDefinition) when `def` has validation diagnostics.
RunningGame create_running_game(GameDefinition def, std::string id, std::uint64_t seed);
RunningGame create_running_game(DefinitionPtr def, std::string id, std::uint64_t seed);

/// Throws WrongState after the game started, GameFull at max_players.
RunningGame join_player(RunningGame rg, std::string name, PlayerKind kind);

/// Commands in seq order across the whole history.
std::vector<Command> command_log(const RunningGame& rg);

std::string snapshot(const RunningGame& rg);
/// Throws GameError(CorruptSnapshot).
RunningGame restore(std::string_view text);

// ---------------------------------------------------------------------------
// Client-side replica: only what commands can reconstruct.

struct GameView {
  Board board;
  std::vector<Player> players;
  LifecycleState state = LifecycleState::NotStarted;
  std::optional<Outcome> outcome;
  int winner = 0;
  int current_player = 0;
  std::uint64_t last_seq = 0;

  bool operator==(const GameView&) const = default;
};

/// View of the game as a client would hold it right now.
GameView view_of(const RunningGame& rg);
/// View of a game before any command: initial board, nobody joined.
GameView initial_view(const GameDefinition& def);

/// Throws GameError(OutOfOrder) unless cmd.seq == view.last_seq + 1.
void apply_command(GameView& view, const Command& cmd);

std::string_view to_string(PlayerKind v);
std::string_view to_string(OutcomeKind v);
std::string_view to_string(EventKind v);
std::string_view to_string(CommandKind v);
std::optional<PlayerKind> player_kind_from(std::string_view s);
std::optional<OutcomeKind> outcome_kind_from(std::string_view s);
std::optional<EventKind> event_kind_from(std::string_view s);
std::optional<CommandKind> command_kind_from(std::string_view s);

std::string describe(const Outcome& o);

}  // namespace games
