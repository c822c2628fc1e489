#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "games/definition.hpp"
#include "games/diagnostic.hpp"
#include "games/running_game.hpp"

namespace games {

struct DispatchResult {
  RunningGame game;
  std::vector<Command> commands;
  std::vector<std::string> fired;  // rule names, components included, in firing order
};

struct RuleRun {
  RunningGame game;
  std::vector<Command> commands;
  bool fired = false;
};

/// Runs every rule triggered by `ev.kind` in definition order. When nothing
/// fires the returned game equals `rg` and no history entry is added.
DispatchResult dispatch_event(const RunningGame& rg, const Event& ev);

/// A full move: dispatch, then a TerminationCheck dispatch when a TileClick
/// fired and the game is still running.
DispatchResult step(const RunningGame& rg, const Event& ev);

/// Fires iff every condition holds; then actions in order, then each
/// component rule against the updated game.
RuleRun run_rule(const RunningGame& rg, const Rule& rule, const Event& ev);

/// Pure predicate. Throws MissingContext for tile conditions without a coord
/// and SemanticsError for conditions that do not fit the game's semantics.
bool eval_condition(const RunningGame& rg, const Event& ev, const Condition& cond);

/// Pattern used by SetWinnerMatched; falls back to the definition's win pattern.
struct ActionContext {
  const Pattern* matched_pattern = nullptr;
};

std::pair<RunningGame, std::vector<Command>> apply_action(const RunningGame& rg, const Event& ev,
                                                          const Action& act,
                                                          const ActionContext& ctx = {});

using CoordList = std::vector<Coord>;

/// Deterministic, duplicate-free. Order: tiles as given, then rows
/// top-to-bottom (windows left-to-right), cols, diag, antidiag; composites
/// in part order. Throws OutOfBounds for tiles off the board.
std::vector<CoordList> expand_pattern(const Pattern& p, int rows, int cols);

/// Owner of the first expanded list whose cells are equal and nonzero.
std::optional<int> check_winner(const RunningGame& rg, const Pattern& p);

/// Throws WrongState unless Started.
std::pair<RunningGame, Command> switch_player(const RunningGame& rg);

/// Unknown component references and cycles; empty when the graph is valid.
Diagnostics validate_rule_graph(std::span<const Rule> rules);

/// Why an event fired nothing: the first failing condition of the first
/// rule the event selects.
struct Rejection {
  std::string code;
  std::string reason;
};

Rejection explain_rejection(const RunningGame& rg, const Event& ev);

}  // namespace games
