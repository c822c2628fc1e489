#include "games/definition.hpp"

#include "games/error.hpp"

namespace games {

Pattern Pattern::tiles(std::vector<std::vector<Coord>> lists) {
  return Pattern{TilesPattern{std::move(lists)}};
}

Pattern Pattern::lines(int length, std::set<LineFamily> families) {
  return Pattern{LinesPattern{length, std::move(families)}};
}

Pattern Pattern::all_lines(int length) {
  return lines(length, {LineFamily::Rows, LineFamily::Cols, LineFamily::Diag,
                        LineFamily::Antidiag});
}

Pattern Pattern::composite(std::vector<Pattern> parts) {
  return Pattern{CompositePattern{std::move(parts)}};
}

Condition Condition::game_type_is(std::string name) {
  Condition c;
  c.kind = ConditionKind::GameTypeIs;
  c.name = std::move(name);
  return c;
}

Condition Condition::state_is(LifecycleState s) {
  Condition c;
  c.kind = ConditionKind::StateIs;
  c.state = s;
  return c;
}

Condition Condition::simple(ConditionKind k) {
  Condition c;
  c.kind = k;
  return c;
}

Condition Condition::pattern_owned(std::optional<Pattern> p) {
  Condition c;
  c.kind = ConditionKind::PatternOwnedBySamePlayer;
  c.pattern = std::move(p);
  return c;
}

Condition Condition::groups_distinct(std::vector<GroupFamily> groups) {
  Condition c;
  c.kind = ConditionKind::GroupsAllDistinct;
  c.groups = std::move(groups);
  return c;
}

bool is_tile_relative(ConditionKind kind) noexcept {
  switch (kind) {
    case ConditionKind::TileEmpty:
    case ConditionKind::TileNotLocked:
    case ConditionKind::ValueInDomain:
    case ConditionKind::LegalSymbolPlacement:
      return true;
    default:
      return false;
  }
}

const Rule* GameDefinition::find_rule(std::string_view rule_name) const {
  for (const auto& r : rules) {
    if (r.name == rule_name) return &r;
  }
  return nullptr;
}

Board GameDefinition::initial_board() const {
  Board board(rows, cols, 0);
  if (givens) {
    if (static_cast<int>(givens->size()) != rows) {
      throw GameError(Errc::InvalidDefinition, "givens row count differs from board rows");
    }
    for (int r = 0; r < rows; ++r) {
      const auto& row = (*givens)[static_cast<std::size_t>(r)];
      if (static_cast<int>(row.size()) != cols) {
        throw GameError(Errc::InvalidDefinition, "givens column count differs from board cols");
      }
      for (int c = 0; c < cols; ++c) {
        const auto v = row[static_cast<std::size_t>(c)];
        if (v != 0) {
          board.force({r, c}, v);
          board.lock({r, c});
        }
      }
    }
  }
  return board;
}

}  // namespace games
