// Text names for every enum that crosses a file or wire boundary.

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include "games/analyzer.hpp"
#include "games/definition.hpp"
#include "games/diagnostic.hpp"
#include "games/error.hpp"
#include "games/running_game.hpp"

namespace games {
namespace {

template <typename E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

template <typename E, std::size_t N>
std::string_view name_of(const NameTable<E, N>& table, E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> value_of(const NameTable<E, N>& table, std::string_view s) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  return std::nullopt;
}

constexpr NameTable<Errc, 16> kErrc{{
    {Errc::InvalidDimensions, "InvalidDimensions"},
    {Errc::OutOfBounds, "OutOfBounds"},
    {Errc::LockedCell, "LockedCell"},
    {Errc::InvalidDefinition, "InvalidDefinition"},
    {Errc::WrongState, "WrongState"},
    {Errc::GameFull, "GameFull"},
    {Errc::OutOfOrder, "OutOfOrder"},
    {Errc::CorruptSnapshot, "CorruptSnapshot"},
    {Errc::MissingContext, "MissingContext"},
    {Errc::SemanticsError, "SemanticsError"},
    {Errc::UnknownRule, "UnknownRule"},
    {Errc::InvalidParams, "InvalidParams"},
    {Errc::InvalidGivens, "InvalidGivens"},
    {Errc::InvalidValue, "InvalidValue"},
    {Errc::NotFound, "NotFound"},
    {Errc::IoError, "IoError"},
}};

constexpr NameTable<DiagCode, 9> kDiag{{
    {DiagCode::E_PARSE, "E_PARSE"},
    {DiagCode::E_UNKNOWN_CONDITION, "E_UNKNOWN_CONDITION"},
    {DiagCode::E_UNKNOWN_ACTION, "E_UNKNOWN_ACTION"},
    {DiagCode::E_UNKNOWN_RULE, "E_UNKNOWN_RULE"},
    {DiagCode::E_CYCLE, "E_CYCLE"},
    {DiagCode::E_OUT_OF_BOUNDS, "E_OUT_OF_BOUNDS"},
    {DiagCode::E_PLAYER_BOUNDS, "E_PLAYER_BOUNDS"},
    {DiagCode::E_SEMANTICS, "E_SEMANTICS"},
    {DiagCode::E_REGION_TILING, "E_REGION_TILING"},
}};

constexpr NameTable<Semantics, 2> kSemantics{{
    {Semantics::Ownership, "ownership"},
    {Semantics::Symbols, "symbols"},
}};

constexpr NameTable<TurnPolicy, 2> kTurnPolicy{{
    {TurnPolicy::RoundRobin, "round_robin"},
    {TurnPolicy::Random, "random"},
}};

constexpr NameTable<LifecycleState, 3> kLifecycle{{
    {LifecycleState::NotStarted, "NotStarted"},
    {LifecycleState::Started, "Started"},
    {LifecycleState::Terminated, "Terminated"},
}};

constexpr NameTable<LineFamily, 4> kLineFamily{{
    {LineFamily::Rows, "rows"},
    {LineFamily::Cols, "cols"},
    {LineFamily::Diag, "diag"},
    {LineFamily::Antidiag, "antidiag"},
}};

constexpr NameTable<GroupFamily, 3> kGroupFamily{{
    {GroupFamily::Rows, "rows"},
    {GroupFamily::Cols, "cols"},
    {GroupFamily::Regions, "regions"},
}};

constexpr NameTable<ConditionKind, 11> kCondition{{
    {ConditionKind::GameTypeIs, "GameTypeIs"},
    {ConditionKind::StateIs, "StateIs"},
    {ConditionKind::IsCurrentPlayer, "IsCurrentPlayer"},
    {ConditionKind::EnoughPlayers, "EnoughPlayers"},
    {ConditionKind::TileEmpty, "TileEmpty"},
    {ConditionKind::TileNotLocked, "TileNotLocked"},
    {ConditionKind::ValueInDomain, "ValueInDomain"},
    {ConditionKind::PatternOwnedBySamePlayer, "PatternOwnedBySamePlayer"},
    {ConditionKind::BoardFull, "BoardFull"},
    {ConditionKind::GroupsAllDistinct, "GroupsAllDistinct"},
    {ConditionKind::LegalSymbolPlacement, "LegalSymbolPlacement"},
}};

constexpr NameTable<ActionKind, 8> kAction{{
    {ActionKind::SetStateStarted, "SetStateStarted"},
    {ActionKind::SetTileToCurrentPlayer, "SetTileToCurrentPlayer"},
    {ActionKind::SetTileToEventValue, "SetTileToEventValue"},
    {ActionKind::SwitchPlayer, "SwitchPlayer"},
    {ActionKind::SetWinnerCurrent, "SetWinnerCurrent"},
    {ActionKind::SetWinnerMatched, "SetWinnerMatched"},
    {ActionKind::GameOverDraw, "GameOverDraw"},
    {ActionKind::SendMessage, "SendMessage"},
}};

constexpr NameTable<Trigger, 5> kTrigger{{
    {Trigger::GameStart, "GameStart"},
    {Trigger::TileClick, "TileClick"},
    {Trigger::PlayerJoin, "PlayerJoin"},
    {Trigger::TerminationCheck, "TerminationCheck"},
    {Trigger::Component, "Component"},
}};

constexpr NameTable<PlayerKind, 2> kPlayerKind{{
    {PlayerKind::Human, "human"},
    {PlayerKind::Robot, "robot"},
}};

constexpr NameTable<OutcomeKind, 3> kOutcome{{
    {OutcomeKind::Winner, "Winner"},
    {OutcomeKind::Draw, "Draw"},
    {OutcomeKind::Abandoned, "Abandoned"},
}};

constexpr NameTable<EventKind, 4> kEvent{{
    {EventKind::GameStart, "GameStart"},
    {EventKind::TileClick, "TileClick"},
    {EventKind::PlayerJoin, "PlayerJoin"},
    {EventKind::TerminationCheck, "TerminationCheck"},
}};

constexpr NameTable<CommandKind, 6> kCommand{{
    {CommandKind::SetTile, "SetTile"},
    {CommandKind::SetState, "SetState"},
    {CommandKind::SetCurrentPlayer, "SetCurrentPlayer"},
    {CommandKind::SetWinner, "SetWinner"},
    {CommandKind::PlayerJoined, "PlayerJoined"},
    {CommandKind::Message, "Message"},
}};

constexpr NameTable<Verdict, 3> kVerdict{{
    {Verdict::True, "true"},
    {Verdict::False, "false"},
    {Verdict::Unknown, "unknown"},
}};

}  // namespace

std::string_view to_string(Errc v) { return name_of(kErrc, v); }
std::string_view to_string(DiagCode v) { return name_of(kDiag, v); }
std::string_view to_string(Semantics v) { return name_of(kSemantics, v); }
std::string_view to_string(TurnPolicy v) { return name_of(kTurnPolicy, v); }
std::string_view to_string(LifecycleState v) { return name_of(kLifecycle, v); }
std::string_view to_string(LineFamily v) { return name_of(kLineFamily, v); }
std::string_view to_string(GroupFamily v) { return name_of(kGroupFamily, v); }
std::string_view to_string(ConditionKind v) { return name_of(kCondition, v); }
std::string_view to_string(ActionKind v) { return name_of(kAction, v); }
std::string_view to_string(Trigger v) { return name_of(kTrigger, v); }
std::string_view to_string(PlayerKind v) { return name_of(kPlayerKind, v); }
std::string_view to_string(OutcomeKind v) { return name_of(kOutcome, v); }
std::string_view to_string(EventKind v) { return name_of(kEvent, v); }
std::string_view to_string(CommandKind v) { return name_of(kCommand, v); }
std::string_view to_string(Verdict v) { return name_of(kVerdict, v); }

std::optional<Semantics> semantics_from(std::string_view s) { return value_of(kSemantics, s); }
std::optional<TurnPolicy> turn_policy_from(std::string_view s) { return value_of(kTurnPolicy, s); }
std::optional<LifecycleState> lifecycle_from(std::string_view s) { return value_of(kLifecycle, s); }
std::optional<LineFamily> line_family_from(std::string_view s) { return value_of(kLineFamily, s); }
std::optional<GroupFamily> group_family_from(std::string_view s) {
  return value_of(kGroupFamily, s);
}
std::optional<ConditionKind> condition_kind_from(std::string_view s) {
  return value_of(kCondition, s);
}
std::optional<ActionKind> action_kind_from(std::string_view s) { return value_of(kAction, s); }
std::optional<Trigger> trigger_from(std::string_view s) { return value_of(kTrigger, s); }
std::optional<PlayerKind> player_kind_from(std::string_view s) {
  return value_of(kPlayerKind, s);
}
std::optional<OutcomeKind> outcome_kind_from(std::string_view s) { return value_of(kOutcome, s); }
std::optional<EventKind> event_kind_from(std::string_view s) { return value_of(kEvent, s); }
std::optional<CommandKind> command_kind_from(std::string_view s) {
  return value_of(kCommand, s);
}

}  // namespace games
