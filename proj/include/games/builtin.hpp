#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "games/board.hpp"
#include "games/definition.hpp"

namespace games {

struct TicTacToeParams {
  int rows = 3;
  int cols = 3;
  int line_len = 3;
  int players = 2;
  TurnPolicy turn_policy = TurnPolicy::RoundRobin;
};

/// Throws GameError(InvalidParams).
GameDefinition tictactoe_definition(const TicTacToeParams& p);

using Grid = std::vector<std::vector<CellValue>>;

struct SudokuParams {
  int side = 9;
  // Region shape; both 0 means square regions of sqrt(side).
  int region_rows = 0;
  int region_cols = 0;
  Grid givens;  // empty = no givens
  int players = 1;
};

/// Throws GameError(InvalidParams) or GameError(InvalidGivens).
GameDefinition sudoku_definition(const SudokuParams& p);

/// Placement legality: not locked, and either an erase (0) or a digit that
/// appears nowhere else in its row, column, or region.
/// Throws InvalidValue for a nonzero digit outside 1..region_rows*region_cols.
bool sudoku_legal_move(const Board& board, Coord c, CellValue digit, int region_rows,
                       int region_cols);

bool sudoku_solved(const Board& board, int region_rows, int region_cols);

/// The shipped corpus: (file stem, definition).
std::vector<std::pair<std::string, GameDefinition>> builtin_corpus();

/// Givens of the 9x9 sample puzzle.
Grid sample_sudoku_givens();

}  // namespace games
