#include "games/builtin.hpp"

#include <cmath>

#include "games/error.hpp"

namespace games {
namespace {

const std::string kTicTacToe = "tic-tac-toe";
const std::string kSudoku = "sudoku";

Rule game_start_rule(const std::string& game) {
  return Rule{"Game Start",
              Trigger::GameStart,
              {Condition::game_type_is(game), Condition::state_is(LifecycleState::NotStarted),
               Condition::simple(ConditionKind::EnoughPlayers)},
              {Action::simple(ActionKind::SetStateStarted), Action::message("Game started")},
              {}};
}

Rule switch_player_rule() {
  return Rule{"Switch Player",
              Trigger::Component,
              {Condition::state_is(LifecycleState::Started)},
              {Action::simple(ActionKind::SwitchPlayer)},
              {}};
}

}  // namespace

GameDefinition tictactoe_definition(const TicTacToeParams& p) {
  if (p.rows < 1 || p.cols < 1) throw GameError(Errc::InvalidParams, "board must be at least 1x1");
  if (p.line_len < 1 || p.line_len > std::max(p.rows, p.cols)) {
    throw GameError(Errc::InvalidParams, "line length must be within 1..max(rows, cols)");
  }
  if (p.players < 2) throw GameError(Errc::InvalidParams, "tic-tac-toe needs at least 2 players");

  GameDefinition def;
  def.name = kTicTacToe;
  def.rows = p.rows;
  def.cols = p.cols;
  def.semantics = Semantics::Ownership;
  def.value_domain = {1, p.players};
  def.min_players = p.players;
  def.max_players = p.players;
  def.turn_policy = p.turn_policy;
  def.win_pattern = Pattern::all_lines(p.line_len);

  def.rules.push_back(game_start_rule(kTicTacToe));
  def.rules.push_back(Rule{"Tile Click",
                           Trigger::TileClick,
                           {Condition::game_type_is(kTicTacToe),
                            Condition::state_is(LifecycleState::Started),
                            Condition::simple(ConditionKind::IsCurrentPlayer),
                            Condition::simple(ConditionKind::TileEmpty)},
                           {Action::simple(ActionKind::SetTileToCurrentPlayer)},
                           {"Check Winner", "Switch Player"}});
  def.rules.push_back(Rule{"Check Winner",
                           Trigger::Component,
                           {Condition::state_is(LifecycleState::Started),
                            Condition::pattern_owned()},
                           {Action::simple(ActionKind::SetWinnerCurrent)},
                           {}});
  def.rules.push_back(switch_player_rule());
  def.rules.push_back(Rule{"Check Draw",
                           Trigger::TerminationCheck,
                           {Condition::state_is(LifecycleState::Started),
                            Condition::simple(ConditionKind::BoardFull)},
                           {Action::simple(ActionKind::GameOverDraw)},
                           {}});
  return def;
}

GameDefinition sudoku_definition(const SudokuParams& p) {
  if (p.side < 1) throw GameError(Errc::InvalidParams, "side must be >= 1");
  if (p.players < 1) throw GameError(Errc::InvalidParams, "sudoku needs at least 1 player");
  int rr = p.region_rows;
  int rc = p.region_cols;
  if (rr == 0 && rc == 0) {
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(p.side))));
    if (root * root != p.side) {
      throw GameError(Errc::InvalidParams,
                      "side " + std::to_string(p.side) + " is not a perfect square; give a region");
    }
    rr = rc = root;
  }
  if (rr < 1 || rc < 1 || rr * rc != p.side || p.side % rr != 0 || p.side % rc != 0) {
    throw GameError(Errc::InvalidParams, "region shape must tile the board with side cells");
  }

  GameDefinition def;
  def.name = kSudoku;
  def.rows = def.cols = p.side;
  def.semantics = Semantics::Symbols;
  def.value_domain = {1, p.side};
  def.min_players = p.players;
  def.max_players = p.players;
  def.turn_policy = TurnPolicy::RoundRobin;
  def.region = RegionShape{rr, rc};

  if (!p.givens.empty()) {
    if (static_cast<int>(p.givens.size()) != p.side) {
      throw GameError(Errc::InvalidParams, "givens must be side x side");
    }
    Board board(p.side, p.side, 0);
    for (int r = 0; r < p.side; ++r) {
      const auto& row = p.givens[static_cast<std::size_t>(r)];
      if (static_cast<int>(row.size()) != p.side) {
        throw GameError(Errc::InvalidParams, "givens must be side x side");
      }
      for (int c = 0; c < p.side; ++c) {
        const auto v = row[static_cast<std::size_t>(c)];
        if (v < 0 || v > p.side) {
          throw GameError(Errc::InvalidGivens, "given " + std::to_string(v) + " at " +
                                                   to_string(Coord{r, c}) + " outside 1.." +
                                                   std::to_string(p.side));
        }
        board.force({r, c}, v);
      }
    }
    const std::vector<GroupFamily> all{GroupFamily::Rows, GroupFamily::Cols, GroupFamily::Regions};
    if (!groups_distinct(board, all, rr, rc)) {
      throw GameError(Errc::InvalidGivens, "givens repeat a digit within a row, column or region");
    }
    def.givens = p.givens;
  }

  std::vector<std::string> components{"Check Solved"};
  if (p.players > 1) components.push_back("Switch Player");

  def.rules.push_back(game_start_rule(kSudoku));
  def.rules.push_back(Rule{"Tile Click",
                           Trigger::TileClick,
                           {Condition::game_type_is(kSudoku),
                            Condition::state_is(LifecycleState::Started),
                            Condition::simple(ConditionKind::IsCurrentPlayer),
                            Condition::simple(ConditionKind::TileNotLocked),
                            Condition::simple(ConditionKind::ValueInDomain),
                            Condition::simple(ConditionKind::LegalSymbolPlacement)},
                           {Action::simple(ActionKind::SetTileToEventValue)},
                           components});
  def.rules.push_back(Rule{"Check Solved",
                           Trigger::Component,
                           {Condition::state_is(LifecycleState::Started),
                            Condition::simple(ConditionKind::BoardFull),
                            Condition::groups_distinct(
                                {GroupFamily::Rows, GroupFamily::Cols, GroupFamily::Regions})},
                           {Action::simple(ActionKind::SetWinnerCurrent)},
                           {}});
  if (p.players > 1) def.rules.push_back(switch_player_rule());
  return def;
}

bool sudoku_legal_move(const Board& board, Coord c, CellValue digit, int region_rows,
                       int region_cols) {
  const int domain = region_rows * region_cols;
  if (digit != 0 && (digit < 1 || digit > domain)) {
    throw GameError(Errc::InvalidValue, std::to_string(digit) + " outside 1.." +
                                            std::to_string(domain));
  }
  board.at(c);
  if (board.is_locked(c)) return false;
  if (digit == 0) return true;
  return !placement_conflicts(board, c, digit, region_rows, region_cols);
}

bool sudoku_solved(const Board& board, int region_rows, int region_cols) {
  if (!board.full()) return false;
  const std::vector<GroupFamily> all{GroupFamily::Rows, GroupFamily::Cols, GroupFamily::Regions};
  return groups_distinct(board, all, region_rows, region_cols);
}

Grid sample_sudoku_givens() {
  return {
      {5, 3, 0, 0, 7, 0, 0, 0, 0},
      {6, 0, 0, 1, 9, 5, 0, 0, 0},
      {0, 9, 8, 0, 0, 0, 0, 6, 0},
      {8, 0, 0, 0, 6, 0, 0, 0, 3},
      {4, 0, 0, 8, 0, 3, 0, 0, 1},
      {7, 0, 0, 0, 2, 0, 0, 0, 6},
      {0, 6, 0, 0, 0, 0, 2, 8, 0},
      {0, 0, 0, 4, 1, 9, 0, 0, 5},
      {0, 0, 0, 0, 8, 0, 0, 7, 9},
  };
}

std::vector<std::pair<std::string, GameDefinition>> builtin_corpus() {
  return {
      {"ttt-3x3", tictactoe_definition({3, 3, 3, 2, TurnPolicy::RoundRobin})},
      {"ttt-4x4-len4", tictactoe_definition({4, 4, 4, 2, TurnPolicy::RoundRobin})},
      {"ttt-4x4-len3", tictactoe_definition({4, 4, 3, 2, TurnPolicy::RoundRobin})},
      {"ttt-3x3-4p", tictactoe_definition({3, 3, 3, 4, TurnPolicy::RoundRobin})},
      {"sudoku-9x9-sample", sudoku_definition({9, 3, 3, sample_sudoku_givens(), 1})},
      {"sudoku-4x4-empty", sudoku_definition({4, 2, 2, {}, 1})},
  };
}

}  // namespace games
