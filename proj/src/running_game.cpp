#include "games/running_game.hpp"

#include <memory>

#include "games/codec.hpp"
#include "games/dsl.hpp"
#include "games/error.hpp"

namespace games {

Event Event::game_start(std::optional<int> actor) {
  Event e;
  e.kind = EventKind::GameStart;
  e.actor = actor;
  return e;
}

Event Event::tile_click(int actor, Coord c, std::optional<CellValue> v) {
  Event e;
  e.kind = EventKind::TileClick;
  e.actor = actor;
  e.coord = c;
  e.value = v;
  return e;
}

Event Event::player_join(std::string name, PlayerKind kind) {
  Event e;
  e.kind = EventKind::PlayerJoin;
  e.name = std::move(name);
  e.player_kind = kind;
  return e;
}

Event Event::termination_check() {
  Event e;
  e.kind = EventKind::TerminationCheck;
  return e;
}

Command Command::set_tile(Coord c, CellValue v) {
  Command cmd;
  cmd.kind = CommandKind::SetTile;
  cmd.coord = c;
  cmd.value = v;
  return cmd;
}

Command Command::set_state(LifecycleState s, std::optional<Outcome> o) {
  Command cmd;
  cmd.kind = CommandKind::SetState;
  cmd.state = s;
  cmd.outcome = o;
  return cmd;
}

Command Command::set_current_player(int id) {
  Command cmd;
  cmd.kind = CommandKind::SetCurrentPlayer;
  cmd.player = id;
  return cmd;
}

Command Command::set_winner(int id) {
  Command cmd;
  cmd.kind = CommandKind::SetWinner;
  cmd.player = id;
  return cmd;
}

Command Command::player_joined(Player p) {
  Command cmd;
  cmd.kind = CommandKind::PlayerJoined;
  cmd.joined = std::move(p);
  return cmd;
}

Command Command::message(std::string text) {
  Command cmd;
  cmd.kind = CommandKind::Message;
  cmd.text = std::move(text);
  return cmd;
}

int RunningGame::current_player_id() const noexcept {
  if (!current || *current >= players.size()) return 0;
  return players[*current].id;
}

bool RunningGame::has_player(int player_id) const noexcept {
  return player_id >= 1 && static_cast<std::size_t>(player_id) <= players.size();
}

bool RunningGame::operator==(const RunningGame& other) const {
  const bool same_def = definition == other.definition ||
                        (definition && other.definition && *definition == *other.definition);
  return same_def && id == other.id && board == other.board && players == other.players &&
         current == other.current && state == other.state && outcome == other.outcome &&
         history == other.history && rng_seed == other.rng_seed &&
         rng_draws == other.rng_draws && last_seq == other.last_seq;
}

RunningGame create_running_game(GameDefinition def, std::string id, std::uint64_t seed) {
  return create_running_game(std::make_shared<const GameDefinition>(std::move(def)),
                             std::move(id), seed);
}

RunningGame create_running_game(DefinitionPtr def, std::string id, std::uint64_t seed) {
  if (!def) throw GameError(Errc::InvalidDefinition, "no definition");
  auto diags = validate_definition(*def);
  if (!diags.empty()) {
    const auto& d = diags.front();
    throw GameError(Errc::InvalidDefinition,
                    std::string(to_string(d.code)) + " at " + d.location + ": " + d.message);
  }
  RunningGame rg;
  rg.id = std::move(id);
  rg.board = def->initial_board();
  rg.definition = std::move(def);
  rg.rng_seed = seed;
  return rg;
}

RunningGame join_player(RunningGame rg, std::string name, PlayerKind kind) {
  if (rg.state != LifecycleState::NotStarted) {
    throw GameError(Errc::WrongState, "players may only join before the game starts");
  }
  if (static_cast<int>(rg.players.size()) >= rg.def().max_players) {
    throw GameError(Errc::GameFull,
                    "game already has " + std::to_string(rg.def().max_players) + " players");
  }
  Player p{static_cast<int>(rg.players.size()) + 1, name, kind};
  rg.players.push_back(p);
  HistoryEntry entry{Event::player_join(std::move(name), kind), {}};
  entry.commands.push_back(rg.stamp(Command::player_joined(std::move(p))));
  rg.history.push_back(std::move(entry));
  return rg;
}

std::vector<Command> command_log(const RunningGame& rg) {
  std::vector<Command> out;
  for (const auto& entry : rg.history) {
    out.insert(out.end(), entry.commands.begin(), entry.commands.end());
  }
  return out;
}

std::string snapshot(const RunningGame& rg) { return canonical_dump(to_json(rg)); }

RunningGame restore(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GameError(Errc::CorruptSnapshot, e.what());
  }
  if (!j.is_object()) throw GameError(Errc::CorruptSnapshot, "snapshot must be an object");

  auto def_it = j.find("definition");
  if (def_it == j.end()) throw GameError(Errc::CorruptSnapshot, "missing 'definition'");
  auto parsed = definition_from_json(*def_it);
  if (!parsed.ok()) {
    const auto& d = parsed.diagnostics.front();
    throw GameError(Errc::CorruptSnapshot, "embedded definition: " + d.message);
  }

  RunningGame rg;
  try {
    rg.definition = std::make_shared<const GameDefinition>(std::move(*parsed.definition));
    rg.id = j.at("id").get<std::string>();
    rg.board = board_from_json(j.at("board"));
    for (const auto& p : j.at("players")) rg.players.push_back(player_from_json(p));
    rg.state = lifecycle_from(j.at("state").get<std::string>()).value();
    if (!j.at("outcome").is_null()) rg.outcome = outcome_from_json(j["outcome"]);
    const auto& cur = j.at("current_player");
    if (!cur.is_null()) {
      const int id = cur.get<int>();
      if (!rg.has_player(id)) throw GameError(Errc::CorruptSnapshot, "unknown current player");
      rg.current = static_cast<std::size_t>(id - 1);
    }
    for (const auto& h : j.at("history")) {
      HistoryEntry entry{event_from_json(h.at("event")), {}};
      for (const auto& c : h.at("commands")) entry.commands.push_back(command_from_json(c));
      rg.history.push_back(std::move(entry));
    }
    rg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    rg.rng_draws = j.at("rng_draws").get<std::uint64_t>();
    rg.last_seq = j.at("last_seq").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw GameError(Errc::CorruptSnapshot, e.what());
  } catch (const std::bad_optional_access&) {
    throw GameError(Errc::CorruptSnapshot, "unknown state name");
  }

  if (rg.board.rows() != rg.def().rows || rg.board.cols() != rg.def().cols) {
    throw GameError(Errc::CorruptSnapshot, "board dimensions differ from the definition");
  }
  std::uint64_t expected = 0;
  for (const auto& c : command_log(rg)) {
    if (c.seq != ++expected) throw GameError(Errc::CorruptSnapshot, "command log is not dense");
  }
  if (expected != rg.last_seq) throw GameError(Errc::CorruptSnapshot, "last_seq mismatch");
  return rg;
}

GameView view_of(const RunningGame& rg) {
  GameView v;
  v.board = rg.board;
  v.players = rg.players;
  v.state = rg.state;
  v.outcome = rg.outcome;
  if (rg.outcome && rg.outcome->kind == OutcomeKind::Winner) v.winner = rg.outcome->winner;
  v.current_player = rg.current_player_id();
  v.last_seq = rg.last_seq;
  return v;
}

GameView initial_view(const GameDefinition& def) {
  GameView v;
  v.board = def.initial_board();
  return v;
}

void apply_command(GameView& view, const Command& cmd) {
  if (cmd.seq != view.last_seq + 1) {
    throw GameError(Errc::OutOfOrder, "expected seq " + std::to_string(view.last_seq + 1) +
                                          ", got " + std::to_string(cmd.seq));
  }
  switch (cmd.kind) {
    case CommandKind::SetTile:
      view.board.force(cmd.coord, cmd.value);
      break;
    case CommandKind::SetState:
      view.state = cmd.state;
      view.outcome = cmd.outcome;
      break;
    case CommandKind::SetCurrentPlayer:
      view.current_player = cmd.player;
      break;
    case CommandKind::SetWinner:
      view.winner = cmd.player;
      break;
    case CommandKind::PlayerJoined:
      view.players.push_back(cmd.joined);
      break;
    case CommandKind::Message:
      break;
  }
  view.last_seq = cmd.seq;
}

std::string describe(const Outcome& o) {
  switch (o.kind) {
    case OutcomeKind::Winner:
      return "winner: " + std::to_string(o.winner);
    case OutcomeKind::Draw:
      return "draw";
    case OutcomeKind::Abandoned:
      return "abandoned";
  }
  return "?";
}

}  // namespace games
