#include "games/codec.hpp"

#include <string>

#include "games/error.hpp"

namespace games {
namespace {

[[noreturn]] void corrupt(const std::string& what) {
  throw GameError(Errc::CorruptSnapshot, what);
}

const json& need(const json& j, const char* key) {
  if (!j.is_object()) corrupt(std::string("expected object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) corrupt(std::string("missing '") + key + "'");
  return *it;
}

template <typename T>
T need_as(const json& j, const char* key) {
  try {
    return need(j, key).get<T>();
  } catch (const json::exception& e) {
    corrupt(std::string("bad '") + key + "': " + e.what());
  }
}

template <typename E, typename Fn>
E need_enum(const json& j, const char* key, Fn from) {
  auto text = need_as<std::string>(j, key);
  auto v = from(text);
  if (!v) corrupt(std::string("unknown ") + key + " '" + text + "'");
  return *v;
}

}  // namespace

json to_json(Coord c) { return json::array({c.row, c.col}); }

json to_json(const Pattern& p) {
  return std::visit(
      [](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TilesPattern>) {
          json lists = json::array();
          for (const auto& list : node.lists) {
            json coords = json::array();
            for (auto c : list) coords.push_back(to_json(c));
            lists.push_back(std::move(coords));
          }
          return json{{"tiles", std::move(lists)}};
        } else if constexpr (std::is_same_v<T, LinesPattern>) {
          json families = json::array();
          for (auto f : node.families) families.push_back(std::string(to_string(f)));
          return json{{"lines", {{"len", node.length}, {"families", std::move(families)}}}};
        } else {
          json parts = json::array();
          for (const auto& part : node.parts) parts.push_back(to_json(part));
          return json{{"composite", std::move(parts)}};
        }
      },
      p.node);
}

json to_json(const Condition& c) {
  json j{{"kind", std::string(to_string(c.kind))}};
  switch (c.kind) {
    case ConditionKind::GameTypeIs:
      j["name"] = c.name;
      break;
    case ConditionKind::StateIs:
      j["state"] = std::string(to_string(c.state));
      break;
    case ConditionKind::PatternOwnedBySamePlayer:
      if (c.pattern) j["pattern"] = to_json(*c.pattern);
      break;
    case ConditionKind::GroupsAllDistinct: {
      json groups = json::array();
      for (auto g : c.groups) groups.push_back(std::string(to_string(g)));
      j["groups"] = std::move(groups);
      break;
    }
    default:
      break;
  }
  return j;
}

json to_json(const Action& a) {
  json j{{"kind", std::string(to_string(a.kind))}};
  if (a.kind == ActionKind::SendMessage) j["text"] = a.text;
  return j;
}

json to_json(const Rule& r) {
  json conditions = json::array();
  for (const auto& c : r.conditions) conditions.push_back(to_json(c));
  json actions = json::array();
  for (const auto& a : r.actions) actions.push_back(to_json(a));
  return json{{"name", r.name},
              {"on", std::string(to_string(r.on))},
              {"conditions", std::move(conditions)},
              {"actions", std::move(actions)},
              {"components", r.components}};
}

json to_json(const GameDefinition& def) {
  json rules = json::array();
  for (const auto& r : def.rules) rules.push_back(to_json(r));
  json j{{"name", def.name},
         {"rows", def.rows},
         {"cols", def.cols},
         {"semantics", std::string(to_string(def.semantics))},
         {"value_domain", {{"lo", def.value_domain.lo}, {"hi", def.value_domain.hi}}},
         {"min_players", def.min_players},
         {"max_players", def.max_players},
         {"turn_policy", std::string(to_string(def.turn_policy))},
         {"rules", std::move(rules)}};
  if (def.win_pattern) j["win_pattern"] = to_json(*def.win_pattern);
  if (def.givens) j["givens"] = *def.givens;
  if (def.region) j["region"] = {{"rows", def.region->rows}, {"cols", def.region->cols}};
  return j;
}

json to_json(const Board& b) {
  json locked = json::array();
  for (auto c : b.locked()) locked.push_back(to_json(c));
  return json{{"rows", b.rows()}, {"cols", b.cols()}, {"cells", b.grid()},
              {"locked", std::move(locked)}};
}

json to_json(const Player& p) {
  return json{{"id", p.id}, {"name", p.name}, {"kind", std::string(to_string(p.kind))}};
}

json to_json(const Outcome& o) {
  json j{{"kind", std::string(to_string(o.kind))}};
  if (o.kind == OutcomeKind::Winner) j["player"] = o.winner;
  return j;
}

json to_json(const Event& e) {
  json j{{"kind", std::string(to_string(e.kind))}};
  if (e.actor) j["actor"] = *e.actor;
  switch (e.kind) {
    case EventKind::TileClick:
      if (e.coord) j["coord"] = to_json(*e.coord);
      if (e.value) j["value"] = *e.value;
      break;
    case EventKind::PlayerJoin:
      j["name"] = e.name;
      j["player_kind"] = std::string(to_string(e.player_kind));
      break;
    default:
      break;
  }
  return j;
}

json to_json(const Command& c) {
  json j{{"seq", c.seq}, {"kind", std::string(to_string(c.kind))}};
  switch (c.kind) {
    case CommandKind::SetTile:
      j["coord"] = to_json(c.coord);
      j["value"] = c.value;
      break;
    case CommandKind::SetState:
      j["state"] = std::string(to_string(c.state));
      if (c.outcome) j["outcome"] = to_json(*c.outcome);
      break;
    case CommandKind::SetCurrentPlayer:
    case CommandKind::SetWinner:
      j["player"] = c.player;
      break;
    case CommandKind::PlayerJoined:
      j["player"] = to_json(c.joined);
      break;
    case CommandKind::Message:
      j["text"] = c.text;
      break;
  }
  return j;
}

json to_json(const RunningGame& rg) {
  json players = json::array();
  for (const auto& p : rg.players) players.push_back(to_json(p));
  json history = json::array();
  for (const auto& entry : rg.history) {
    json commands = json::array();
    for (const auto& c : entry.commands) commands.push_back(to_json(c));
    history.push_back({{"event", to_json(entry.event)}, {"commands", std::move(commands)}});
  }
  json j{{"id", rg.id},
         {"definition", to_json(rg.def())},
         {"board", to_json(rg.board)},
         {"players", std::move(players)},
         {"state", std::string(to_string(rg.state))},
         {"history", std::move(history)},
         {"rng_seed", rg.rng_seed},
         {"rng_draws", rg.rng_draws},
         {"last_seq", rg.last_seq}};
  j["current_player"] = rg.current ? json(rg.current_player_id()) : json(nullptr);
  j["outcome"] = rg.outcome ? to_json(*rg.outcome) : json(nullptr);
  return j;
}

json to_json(const GameView& v) {
  json players = json::array();
  for (const auto& p : v.players) players.push_back(to_json(p));
  json j{{"board", to_json(v.board)},
         {"players", std::move(players)},
         {"state", std::string(to_string(v.state))},
         {"winner", v.winner},
         {"current_player", v.current_player},
         {"last_seq", v.last_seq}};
  j["outcome"] = v.outcome ? to_json(*v.outcome) : json(nullptr);
  return j;
}

Coord coord_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    corrupt("coordinate must be [row, col]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

Board board_from_json(const json& j) {
  const int rows = need_as<int>(j, "rows");
  const int cols = need_as<int>(j, "cols");
  auto cells = need_as<std::vector<std::vector<CellValue>>>(j, "cells");
  if (rows < 1 || cols < 1) corrupt("board dimensions must be positive");
  Board b(rows, cols, 0);
  if (static_cast<int>(cells.size()) != rows) corrupt("cells row count mismatch");
  for (int r = 0; r < rows; ++r) {
    const auto& row = cells[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != cols) corrupt("cells column count mismatch");
    for (int c = 0; c < cols; ++c) b.force({r, c}, row[static_cast<std::size_t>(c)]);
  }
  const auto& locked = need(j, "locked");
  if (!locked.is_array()) corrupt("locked must be an array");
  for (const auto& c : locked) {
    auto coord = coord_from_json(c);
    if (!b.in_bounds(coord)) corrupt("locked cell out of bounds");
    b.lock(coord);
  }
  return b;
}

Player player_from_json(const json& j) {
  return Player{need_as<int>(j, "id"), need_as<std::string>(j, "name"),
                need_enum<PlayerKind>(j, "kind", player_kind_from)};
}

Outcome outcome_from_json(const json& j) {
  Outcome o;
  o.kind = need_enum<OutcomeKind>(j, "kind", outcome_kind_from);
  if (o.kind == OutcomeKind::Winner) o.winner = need_as<int>(j, "player");
  return o;
}

Event event_from_json(const json& j) {
  Event e;
  e.kind = need_enum<EventKind>(j, "kind", event_kind_from);
  if (j.contains("actor")) e.actor = need_as<int>(j, "actor");
  switch (e.kind) {
    case EventKind::TileClick:
      e.coord = coord_from_json(need(j, "coord"));
      if (j.contains("value") && !j["value"].is_null()) e.value = need_as<int>(j, "value");
      break;
    case EventKind::PlayerJoin:
      e.name = need_as<std::string>(j, "name");
      e.player_kind = need_enum<PlayerKind>(j, "player_kind", player_kind_from);
      break;
    default:
      break;
  }
  return e;
}

Command command_from_json(const json& j) {
  Command c;
  c.seq = need_as<std::uint64_t>(j, "seq");
  c.kind = need_enum<CommandKind>(j, "kind", command_kind_from);
  switch (c.kind) {
    case CommandKind::SetTile:
      c.coord = coord_from_json(need(j, "coord"));
      c.value = need_as<int>(j, "value");
      break;
    case CommandKind::SetState:
      c.state = need_enum<LifecycleState>(j, "state", lifecycle_from);
      if (j.contains("outcome") && !j["outcome"].is_null()) {
        c.outcome = outcome_from_json(j["outcome"]);
      }
      break;
    case CommandKind::SetCurrentPlayer:
    case CommandKind::SetWinner:
      c.player = need_as<int>(j, "player");
      break;
    case CommandKind::PlayerJoined:
      c.joined = player_from_json(need(j, "player"));
      break;
    case CommandKind::Message:
      c.text = need_as<std::string>(j, "text");
      break;
  }
  return c;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace games
