#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "games/board.hpp"

namespace games {

enum class Semantics { Ownership, Symbols };
enum class TurnPolicy { RoundRobin, Random };
enum class LifecycleState { NotStarted, Started, Terminated };

// ---------------------------------------------------------------------------
// Win patterns. Three description levels that all reduce to lists of
// coordinates: explicit tiles, line families, and compositions of both.

enum class LineFamily { Rows, Cols, Diag, Antidiag };

struct Pattern;

struct TilesPattern {
  std::vector<std::vector<Coord>> lists;
  bool operator==(const TilesPattern&) const = default;
};

struct LinesPattern {
  int length = 3;
  std::set<LineFamily> families;
  bool operator==(const LinesPattern&) const = default;
};

struct CompositePattern {
  std::vector<Pattern> parts;
  bool operator==(const CompositePattern& other) const;
};

struct Pattern {
  std::variant<TilesPattern, LinesPattern, CompositePattern> node;

  static Pattern tiles(std::vector<std::vector<Coord>> lists);
  static Pattern lines(int length, std::set<LineFamily> families);
  static Pattern all_lines(int length);
  static Pattern composite(std::vector<Pattern> parts);

  bool operator==(const Pattern&) const = default;
};

inline bool CompositePattern::operator==(const CompositePattern& other) const {
  return parts == other.parts;
}

// ---------------------------------------------------------------------------
// Event-Condition-Action vocabulary. Closed enums; new kinds need code.

enum class ConditionKind {
  GameTypeIs,
  StateIs,
  IsCurrentPlayer,
  EnoughPlayers,
  TileEmpty,
  TileNotLocked,
  ValueInDomain,
  PatternOwnedBySamePlayer,
  BoardFull,
  GroupsAllDistinct,
  LegalSymbolPlacement,
};

struct Condition {
  ConditionKind kind = ConditionKind::BoardFull;
  std::string name;                      // GameTypeIs
  LifecycleState state = LifecycleState::NotStarted;  // StateIs
  std::optional<Pattern> pattern;        // PatternOwnedBySamePlayer; empty = win pattern
  std::vector<GroupFamily> groups;       // GroupsAllDistinct

  static Condition game_type_is(std::string name);
  static Condition state_is(LifecycleState s);
  static Condition simple(ConditionKind k);
  static Condition pattern_owned(std::optional<Pattern> p = std::nullopt);
  static Condition groups_distinct(std::vector<GroupFamily> groups);

  bool operator==(const Condition&) const = default;
};

/// Conditions that read the event's tile coordinate.
bool is_tile_relative(ConditionKind kind) noexcept;

enum class ActionKind {
  SetStateStarted,
  SetTileToCurrentPlayer,
  SetTileToEventValue,
  SwitchPlayer,
  SetWinnerCurrent,
  SetWinnerMatched,
  GameOverDraw,
  SendMessage,
};

struct Action {
  ActionKind kind = ActionKind::SendMessage;
  std::string text;  // SendMessage

  static Action simple(ActionKind k) { return Action{k, {}}; }
  static Action message(std::string text) {
    return Action{ActionKind::SendMessage, std::move(text)};
  }

  bool operator==(const Action&) const = default;
};

/// Which event kind selects a rule. Component rules run only when another
/// rule lists them.
enum class Trigger { GameStart, TileClick, PlayerJoin, TerminationCheck, Component };

struct Rule {
  std::string name;
  Trigger on = Trigger::Component;
  std::vector<Condition> conditions;
  std::vector<Action> actions;
  std::vector<std::string> components;

  bool operator==(const Rule&) const = default;
};

// ---------------------------------------------------------------------------

struct ValueDomain {
  int lo = 1;
  int hi = 1;

  int size() const noexcept { return hi - lo + 1; }
  bool contains(CellValue v) const noexcept { return v >= lo && v <= hi; }
  bool operator==(const ValueDomain&) const = default;
};

struct RegionShape {
  int rows = 0;
  int cols = 0;
  bool operator==(const RegionShape&) const = default;
};

/// A game as pure data.
struct GameDefinition {
  std::string name;
  int rows = 3;
  int cols = 3;
  Semantics semantics = Semantics::Ownership;
  ValueDomain value_domain;
  int min_players = 1;
  int max_players = 1;
  TurnPolicy turn_policy = TurnPolicy::RoundRobin;
  std::optional<Pattern> win_pattern;
  std::vector<Rule> rules;
  std::optional<std::vector<std::vector<CellValue>>> givens;
  std::optional<RegionShape> region;

  const Rule* find_rule(std::string_view rule_name) const;

  /// Empty board, or givens copied in and locked.
  Board initial_board() const;

  bool operator==(const GameDefinition&) const = default;
};

using DefinitionPtr = std::shared_ptr<const GameDefinition>;

// Stable text names, shared by the JSON formats and diagnostics.
std::string_view to_string(Semantics v);
std::string_view to_string(TurnPolicy v);
std::string_view to_string(LifecycleState v);
std::string_view to_string(LineFamily v);
std::string_view to_string(GroupFamily v);
std::string_view to_string(ConditionKind v);
std::string_view to_string(ActionKind v);
std::string_view to_string(Trigger v);

std::optional<Semantics> semantics_from(std::string_view s);
std::optional<TurnPolicy> turn_policy_from(std::string_view s);
std::optional<LifecycleState> lifecycle_from(std::string_view s);
std::optional<LineFamily> line_family_from(std::string_view s);
std::optional<GroupFamily> group_family_from(std::string_view s);
std::optional<ConditionKind> condition_kind_from(std::string_view s);
std::optional<ActionKind> action_kind_from(std::string_view s);
std::optional<Trigger> trigger_from(std::string_view s);

}  // namespace games
