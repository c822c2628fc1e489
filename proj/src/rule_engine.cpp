#include "games/rule_engine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "games/error.hpp"

namespace games {
namespace {

// Mutable working copy for one dispatch. Public entry points copy the game
// once, mutate the copy here, and hand it back; a throw discards it.
struct Txn {
  RunningGame game;
  std::vector<Command> commands;
  std::vector<std::string> fired;

  void emit(Command c) { commands.push_back(game.stamp(std::move(c))); }
};

Trigger trigger_for(EventKind kind) {
  switch (kind) {
    case EventKind::GameStart: return Trigger::GameStart;
    case EventKind::TileClick: return Trigger::TileClick;
    case EventKind::PlayerJoin: return Trigger::PlayerJoin;
    case EventKind::TerminationCheck: return Trigger::TerminationCheck;
  }
  return Trigger::Component;
}

Coord require_coord(const Event& ev, ConditionKind kind) {
  if (!ev.coord) {
    throw GameError(Errc::MissingContext,
                    std::string(to_string(kind)) + " needs an event with a tile coordinate");
  }
  return *ev.coord;
}

const Pattern& resolve_pattern(const RunningGame& rg, const Condition& cond) {
  if (cond.pattern) return *cond.pattern;
  if (!rg.def().win_pattern) {
    throw GameError(Errc::SemanticsError, "condition names no pattern and the game has none");
  }
  return *rg.def().win_pattern;
}

void require_semantics(const RunningGame& rg, Semantics wanted, std::string_view what) {
  if (rg.def().semantics != wanted) {
    throw GameError(Errc::SemanticsError, std::string(what) + " requires " +
                                              std::string(to_string(wanted)) + " semantics");
  }
}

int region_rows(const GameDefinition& def) { return def.region ? def.region->rows : 0; }
int region_cols(const GameDefinition& def) { return def.region ? def.region->cols : 0; }

void terminate(Txn& txn, Outcome outcome) {
  if (txn.game.state == LifecycleState::Terminated) {
    throw GameError(Errc::WrongState, "game already terminated");
  }
  txn.game.state = LifecycleState::Terminated;
  txn.game.outcome = outcome;
  txn.emit(Command::set_state(LifecycleState::Terminated, outcome));
}

void set_winner(Txn& txn, int player) {
  txn.emit(Command::set_winner(player));
  terminate(txn, Outcome::won_by(player));
}

std::size_t next_player_index(RunningGame& rg) {
  const auto n = rg.players.size();
  const auto cur = rg.current.value_or(0);
  if (n <= 1) return 0;
  if (rg.def().turn_policy == TurnPolicy::RoundRobin) return (cur + 1) % n;
  // Counter-addressed draw so the generator state is just (seed, draws).
  std::mt19937_64 engine(rg.rng_seed);
  engine.discard(rg.rng_draws);
  const auto r = static_cast<std::size_t>(engine() % (n - 1));
  ++rg.rng_draws;
  return r < cur ? r : r + 1;
}

void do_switch(Txn& txn) {
  auto& rg = txn.game;
  if (rg.state != LifecycleState::Started) {
    throw GameError(Errc::WrongState, "turns only switch in a started game");
  }
  if (rg.players.empty()) throw GameError(Errc::WrongState, "no players to switch to");
  rg.current = next_player_index(rg);
  txn.emit(Command::set_current_player(rg.current_player_id()));
}

void do_action(Txn& txn, const Event& ev, const Action& act, const ActionContext& ctx) {
  auto& rg = txn.game;
  switch (act.kind) {
    case ActionKind::SetStateStarted:
      if (rg.state != LifecycleState::NotStarted) {
        throw GameError(Errc::WrongState, "game already started");
      }
      if (rg.players.empty()) throw GameError(Errc::WrongState, "no players joined");
      rg.state = LifecycleState::Started;
      rg.current = 0;
      txn.emit(Command::set_state(LifecycleState::Started));
      txn.emit(Command::set_current_player(rg.current_player_id()));
      break;

    case ActionKind::SetTileToCurrentPlayer: {
      require_semantics(rg, Semantics::Ownership, "SetTileToCurrentPlayer");
      if (!ev.coord) throw GameError(Errc::MissingContext, "SetTileToCurrentPlayer needs a tile");
      const int owner = rg.current_player_id();
      if (owner == 0) throw GameError(Errc::WrongState, "no current player");
      rg.board.set(*ev.coord, owner);
      txn.emit(Command::set_tile(*ev.coord, owner));
      break;
    }

    case ActionKind::SetTileToEventValue: {
      require_semantics(rg, Semantics::Symbols, "SetTileToEventValue");
      if (!ev.coord || !ev.value) {
        throw GameError(Errc::MissingContext, "SetTileToEventValue needs a tile and a value");
      }
      const auto v = *ev.value;
      if (v != 0 && !rg.def().value_domain.contains(v)) {
        throw GameError(Errc::InvalidValue, std::to_string(v) + " is outside the value domain");
      }
      rg.board.set(*ev.coord, v);
      txn.emit(Command::set_tile(*ev.coord, v));
      break;
    }

    case ActionKind::SwitchPlayer:
      do_switch(txn);
      break;

    case ActionKind::SetWinnerCurrent: {
      const int winner = rg.current_player_id();
      if (winner == 0) throw GameError(Errc::WrongState, "no current player");
      set_winner(txn, winner);
      break;
    }

    case ActionKind::SetWinnerMatched: {
      const Pattern* p = ctx.matched_pattern;
      if (!p) {
        if (!rg.def().win_pattern) {
          throw GameError(Errc::SemanticsError, "SetWinnerMatched without a pattern");
        }
        p = &*rg.def().win_pattern;
      }
      if (auto winner = check_winner(rg, *p)) set_winner(txn, *winner);
      break;
    }

    case ActionKind::GameOverDraw:
      terminate(txn, Outcome::draw());
      break;

    case ActionKind::SendMessage:
      txn.emit(Command::message(act.text));
      break;
  }
}

bool run_in_place(Txn& txn, const Rule& rule, const Event& ev, std::size_t depth) {
  const auto& def = txn.game.def();
  if (depth > def.rules.size()) {
    throw GameError(Errc::InvalidDefinition, "component rules nest deeper than the rule count");
  }
  for (const auto& cond : rule.conditions) {
    if (!eval_condition(txn.game, ev, cond)) return false;
  }
  txn.fired.push_back(rule.name);

  ActionContext ctx;
  for (const auto& cond : rule.conditions) {
    if (cond.kind == ConditionKind::PatternOwnedBySamePlayer) {
      ctx.matched_pattern = &resolve_pattern(txn.game, cond);
      break;
    }
  }
  for (const auto& act : rule.actions) do_action(txn, ev, act, ctx);

  for (const auto& name : rule.components) {
    const Rule* component = def.find_rule(name);
    if (!component) throw GameError(Errc::UnknownRule, "unknown component rule '" + name + "'");
    run_in_place(txn, *component, ev, depth + 1);
  }
  return true;
}

Txn dispatch_in_place(const RunningGame& rg, const Event& ev) {
  Txn txn{rg, {}, {}};
  const auto trigger = trigger_for(ev.kind);
  for (const auto& rule : rg.def().rules) {
    if (rule.on == trigger) run_in_place(txn, rule, ev, 0);
  }
  if (!txn.fired.empty()) txn.game.history.push_back({ev, txn.commands});
  return txn;
}

void append(DispatchResult& into, DispatchResult&& more) {
  into.game = std::move(more.game);
  into.commands.insert(into.commands.end(), more.commands.begin(), more.commands.end());
  into.fired.insert(into.fired.end(), more.fired.begin(), more.fired.end());
}

}  // namespace

DispatchResult dispatch_event(const RunningGame& rg, const Event& ev) {
  auto txn = dispatch_in_place(rg, ev);
  return {std::move(txn.game), std::move(txn.commands), std::move(txn.fired)};
}

DispatchResult step(const RunningGame& rg, const Event& ev) {
  if (ev.kind == EventKind::PlayerJoin) {
    DispatchResult joined{join_player(rg, ev.name, ev.player_kind), {}, {}};
    joined.commands = joined.game.history.back().commands;
    append(joined, dispatch_event(joined.game, ev));
    return joined;
  }
  auto result = dispatch_event(rg, ev);
  if (ev.kind == EventKind::TileClick && !result.fired.empty() &&
      result.game.state == LifecycleState::Started) {
    append(result, dispatch_event(result.game, Event::termination_check()));
  }
  return result;
}

RuleRun run_rule(const RunningGame& rg, const Rule& rule, const Event& ev) {
  Txn txn{rg, {}, {}};
  const bool fired = run_in_place(txn, rule, ev, 0);
  return {std::move(txn.game), std::move(txn.commands), fired};
}

bool eval_condition(const RunningGame& rg, const Event& ev, const Condition& cond) {
  const auto& def = rg.def();
  switch (cond.kind) {
    case ConditionKind::GameTypeIs:
      return def.name == cond.name;
    case ConditionKind::StateIs:
      return rg.state == cond.state;
    case ConditionKind::IsCurrentPlayer:
      return rg.state == LifecycleState::Started && ev.actor &&
             *ev.actor == rg.current_player_id();
    case ConditionKind::EnoughPlayers:
      return static_cast<int>(rg.players.size()) >= def.min_players;
    case ConditionKind::TileEmpty:
      return rg.board.at(require_coord(ev, cond.kind)) == 0;
    case ConditionKind::TileNotLocked: {
      const auto c = require_coord(ev, cond.kind);
      rg.board.at(c);
      return !rg.board.is_locked(c);
    }
    case ConditionKind::ValueInDomain: {
      const auto c = require_coord(ev, cond.kind);
      rg.board.at(c);
      return ev.value && (*ev.value == 0 || def.value_domain.contains(*ev.value));
    }
    case ConditionKind::PatternOwnedBySamePlayer:
      return check_winner(rg, resolve_pattern(rg, cond)).has_value();
    case ConditionKind::BoardFull:
      return rg.board.full();
    case ConditionKind::GroupsAllDistinct:
      for (auto g : cond.groups) {
        if (g == GroupFamily::Regions && !def.region) {
          throw GameError(Errc::SemanticsError, "region groups need a region shape");
        }
      }
      return groups_distinct(rg.board, cond.groups, region_rows(def), region_cols(def));
    case ConditionKind::LegalSymbolPlacement: {
      require_semantics(rg, Semantics::Symbols, "LegalSymbolPlacement");
      const auto c = require_coord(ev, cond.kind);
      rg.board.at(c);
      if (!ev.value || rg.board.is_locked(c)) return false;
      const auto v = *ev.value;
      if (v == 0) return true;
      if (!def.value_domain.contains(v)) return false;
      return !placement_conflicts(rg.board, c, v, region_rows(def), region_cols(def));
    }
  }
  return false;
}

std::pair<RunningGame, std::vector<Command>> apply_action(const RunningGame& rg, const Event& ev,
                                                          const Action& act,
                                                          const ActionContext& ctx) {
  Txn txn{rg, {}, {}};
  do_action(txn, ev, act, ctx);
  return {std::move(txn.game), std::move(txn.commands)};
}

std::vector<CoordList> expand_pattern(const Pattern& p, int rows, int cols) {
  std::vector<CoordList> out;
  std::set<CoordList> seen;
  auto add = [&](CoordList list) {
    auto key = list;
    std::sort(key.begin(), key.end());
    if (seen.insert(std::move(key)).second) out.push_back(std::move(list));
  };

  auto expand = [&](const Pattern& node, auto& self) -> void {
    if (const auto* tiles = std::get_if<TilesPattern>(&node.node)) {
      for (const auto& list : tiles->lists) {
        for (auto c : list) {
          if (c.row < 0 || c.col < 0 || c.row >= rows || c.col >= cols) {
            throw GameError(Errc::OutOfBounds, "pattern tile " + to_string(c) + " outside " +
                                                   std::to_string(rows) + "x" +
                                                   std::to_string(cols) + " board");
          }
        }
        add(list);
      }
    } else if (const auto* lines = std::get_if<LinesPattern>(&node.node)) {
      const int len = lines->length;
      if (len < 1) throw GameError(Errc::InvalidDefinition, "line length must be >= 1");
      auto window = [&](int r, int c, int dr, int dc) {
        CoordList list;
        for (int i = 0; i < len; ++i) list.push_back({r + i * dr, c + i * dc});
        add(std::move(list));
      };
      const auto& fam = lines->families;
      if (fam.contains(LineFamily::Rows)) {
        for (int r = 0; r < rows; ++r)
          for (int c = 0; c + len <= cols; ++c) window(r, c, 0, 1);
      }
      if (fam.contains(LineFamily::Cols)) {
        for (int c = 0; c < cols; ++c)
          for (int r = 0; r + len <= rows; ++r) window(r, c, 1, 0);
      }
      if (fam.contains(LineFamily::Diag)) {
        for (int r = 0; r + len <= rows; ++r)
          for (int c = 0; c + len <= cols; ++c) window(r, c, 1, 1);
      }
      if (fam.contains(LineFamily::Antidiag)) {
        for (int r = 0; r + len <= rows; ++r)
          for (int c = len - 1; c < cols; ++c) window(r, c, 1, -1);
      }
    } else {
      for (const auto& part : std::get<CompositePattern>(node.node).parts) self(part, self);
    }
  };
  expand(p, expand);
  return out;
}

std::optional<int> check_winner(const RunningGame& rg, const Pattern& p) {
  require_semantics(rg, Semantics::Ownership, "check_winner");
  for (const auto& list : expand_pattern(p, rg.board.rows(), rg.board.cols())) {
    if (list.empty()) continue;
    const auto owner = rg.board.at(list.front());
    if (owner == 0) continue;
    const bool uniform = std::all_of(list.begin(), list.end(),
                                     [&](Coord c) { return rg.board.at(c) == owner; });
    if (uniform) return owner;
  }
  return std::nullopt;
}

std::pair<RunningGame, Command> switch_player(const RunningGame& rg) {
  Txn txn{rg, {}, {}};
  do_switch(txn);
  return {std::move(txn.game), txn.commands.front()};
}

Diagnostics validate_rule_graph(std::span<const Rule> rules) {
  Diagnostics out;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rules.size(); ++i) index.emplace(rules[i].name, i);

  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t k = 0; k < rules[i].components.size(); ++k) {
      const auto& name = rules[i].components[k];
      if (!index.contains(name)) {
        out.push_back({DiagCode::E_UNKNOWN_RULE,
                       "rule '" + rules[i].name + "' references unknown rule '" + name + "'",
                       "/rules/" + std::to_string(i) + "/components/" + std::to_string(k)});
      }
    }
  }

  // Depth-first search; a back edge closes a cycle made of the stack suffix.
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(rules.size(), Mark::White);
  std::vector<std::size_t> stack;
  std::set<std::set<std::size_t>> reported;

  auto visit = [&](std::size_t u, auto& self) -> void {
    mark[u] = Mark::Grey;
    stack.push_back(u);
    for (const auto& name : rules[u].components) {
      auto it = index.find(name);
      if (it == index.end()) continue;
      const auto v = it->second;
      if (mark[v] == Mark::Grey) {
        auto from = std::find(stack.begin(), stack.end(), v);
        std::set<std::size_t> members(from, stack.end());
        if (reported.insert(members).second) {
          std::string path;
          for (auto p = from; p != stack.end(); ++p) path += rules[*p].name + " -> ";
          path += rules[v].name;
          out.push_back({DiagCode::E_CYCLE, "component cycle: " + path,
                         "/rules/" + std::to_string(v) + "/components"});
        }
      } else if (mark[v] == Mark::White) {
        self(v, self);
      }
    }
    stack.pop_back();
    mark[u] = Mark::Black;
  };
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (mark[i] == Mark::White) visit(i, visit);
  }
  return out;
}

namespace {

Rejection reject_for(const RunningGame& rg, const Condition& cond) {
  switch (cond.kind) {
    case ConditionKind::StateIs:
      switch (rg.state) {
        case LifecycleState::NotStarted:
          return {"WrongState", "wrong state: game has not started"};
        case LifecycleState::Started:
          return {"WrongState", "wrong state: game already started"};
        case LifecycleState::Terminated:
          return {"WrongState", "wrong state: game is over"};
      }
      break;
    case ConditionKind::IsCurrentPlayer:
      if (rg.state != LifecycleState::Started) {
        return {"WrongState", "wrong state: no turns outside a started game"};
      }
      return {"NotYourTurn", "not your turn"};
    case ConditionKind::TileEmpty:
      return {"TileTaken", "tile is taken"};
    case ConditionKind::TileNotLocked:
      return {"TileLocked", "tile is locked"};
    case ConditionKind::ValueInDomain:
      return {"InvalidValue", "value outside the game's domain"};
    case ConditionKind::LegalSymbolPlacement:
      return {"IllegalPlacement", "value already present in its row, column or region"};
    case ConditionKind::EnoughPlayers:
      return {"NotEnoughPlayers",
              "need at least " + std::to_string(rg.def().min_players) + " players"};
    case ConditionKind::GameTypeIs:
      return {"WrongGame", "rule applies to game type '" + cond.name + "'"};
    default:
      break;
  }
  return {"ConditionFailed", std::string(to_string(cond.kind)) + " does not hold"};
}

}  // namespace

Rejection explain_rejection(const RunningGame& rg, const Event& ev) {
  const auto trigger = trigger_for(ev.kind);
  for (const auto& rule : rg.def().rules) {
    if (rule.on != trigger) continue;
    for (const auto& cond : rule.conditions) {
      try {
        if (!eval_condition(rg, ev, cond)) return reject_for(rg, cond);
      } catch (const GameError& e) {
        return {std::string(to_string(e.code())), e.what()};
      }
    }
    return {"Rejected", "rule '" + rule.name + "' did not change the game"};
  }
  return {"NoRule", "no rule handles " + std::string(to_string(ev.kind)) + " events"};
}

}  // namespace games
