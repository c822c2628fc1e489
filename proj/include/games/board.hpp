#pragma once

#include <compare>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace games {

/// Cell content. 0 is empty; owners and symbols are >= 1.
using CellValue = int;

struct Coord {
  int row = 0;
  int col = 0;

  auto operator<=>(const Coord&) const = default;
};

std::string to_string(Coord c);

/// Row-major 2-d grid of integer cells plus the set of locked (given) cells.
class Board {
 public:
  Board() = default;

  /// Throws GameError(InvalidDimensions) when either dimension is < 1.
  Board(int rows, int cols, CellValue fill = 0);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool in_bounds(Coord c) const noexcept {
    return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
  }

  CellValue at(Coord c) const;

  /// In-place write. Throws OutOfBounds or LockedCell.
  void set(Coord c, CellValue v);

  /// Writes through locks; used for givens and replica application.
  void force(Coord c, CellValue v);

  void lock(Coord c);
  bool is_locked(Coord c) const;
  const std::set<Coord>& locked() const noexcept { return locked_; }

  bool full() const noexcept;

  std::span<const CellValue> cells() const noexcept { return cells_; }
  std::vector<std::vector<CellValue>> grid() const;

  bool operator==(const Board&) const = default;

 private:
  std::size_t index(Coord c) const;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<CellValue> cells_;
  std::set<Coord> locked_;
};

Board new_board(int rows, int cols, CellValue fill);
CellValue get_cell(const Board& board, Coord c);
/// Returns a copy of `board` differing only at `c`.
Board set_cell(Board board, Coord c, CellValue v);

enum class GroupFamily { Rows, Cols, Regions };

/// Coordinates of every group of the given family. Regions require a
/// region shape that tiles the board; otherwise no region groups exist.
std::vector<std::vector<Coord>> groups_of(const Board& board, GroupFamily family,
                                          int region_rows, int region_cols);

/// True when no nonzero value repeats inside any single group.
bool groups_distinct(const Board& board, std::span<const GroupFamily> families,
                     int region_rows, int region_cols);

/// True when `v` already sits in another cell of c's row, column, or (when
/// region dims are positive) region.
bool placement_conflicts(const Board& board, Coord c, CellValue v, int region_rows,
                         int region_cols);

}  // namespace games
