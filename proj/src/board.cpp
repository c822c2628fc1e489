#include "games/board.hpp"

#include <algorithm>

#include "games/error.hpp"

namespace games {

std::string to_string(Coord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

Board::Board(int rows, int cols, CellValue fill) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw GameError(Errc::InvalidDimensions,
                    "board must be at least 1x1, got " + std::to_string(rows) + "x" +
                        std::to_string(cols));
  }
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

std::size_t Board::index(Coord c) const {
  if (!in_bounds(c)) {
    throw GameError(Errc::OutOfBounds, to_string(c) + " outside " + std::to_string(rows_) + "x" +
                                           std::to_string(cols_) + " board");
  }
  return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols_) +
         static_cast<std::size_t>(c.col);
}

CellValue Board::at(Coord c) const { return cells_[index(c)]; }

void Board::set(Coord c, CellValue v) {
  const auto i = index(c);
  if (locked_.contains(c)) throw GameError(Errc::LockedCell, to_string(c) + " is locked");
  cells_[i] = v;
}

void Board::force(Coord c, CellValue v) { cells_[index(c)] = v; }

void Board::lock(Coord c) {
  index(c);
  locked_.insert(c);
}

bool Board::is_locked(Coord c) const { return locked_.contains(c); }

bool Board::full() const noexcept {
  return std::none_of(cells_.begin(), cells_.end(), [](CellValue v) { return v == 0; });
}

std::vector<std::vector<CellValue>> Board::grid() const {
  std::vector<std::vector<CellValue>> out(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) {
    auto first = cells_.begin() + static_cast<std::ptrdiff_t>(r) * cols_;
    out[static_cast<std::size_t>(r)].assign(first, first + cols_);
  }
  return out;
}

Board new_board(int rows, int cols, CellValue fill) { return Board(rows, cols, fill); }

CellValue get_cell(const Board& board, Coord c) { return board.at(c); }

Board set_cell(Board board, Coord c, CellValue v) {
  board.set(c, v);
  return board;
}

std::vector<std::vector<Coord>> groups_of(const Board& board, GroupFamily family,
                                          int region_rows, int region_cols) {
  std::vector<std::vector<Coord>> groups;
  const int rows = board.rows();
  const int cols = board.cols();
  switch (family) {
    case GroupFamily::Rows:
      for (int r = 0; r < rows; ++r) {
        auto& g = groups.emplace_back();
        for (int c = 0; c < cols; ++c) g.push_back({r, c});
      }
      break;
    case GroupFamily::Cols:
      for (int c = 0; c < cols; ++c) {
        auto& g = groups.emplace_back();
        for (int r = 0; r < rows; ++r) g.push_back({r, c});
      }
      break;
    case GroupFamily::Regions:
      if (region_rows < 1 || region_cols < 1 || rows % region_rows != 0 ||
          cols % region_cols != 0) {
        break;
      }
      for (int r0 = 0; r0 < rows; r0 += region_rows) {
        for (int c0 = 0; c0 < cols; c0 += region_cols) {
          auto& g = groups.emplace_back();
          for (int r = r0; r < r0 + region_rows; ++r) {
            for (int c = c0; c < c0 + region_cols; ++c) g.push_back({r, c});
          }
        }
      }
      break;
  }
  return groups;
}

bool groups_distinct(const Board& board, std::span<const GroupFamily> families,
                     int region_rows, int region_cols) {
  for (auto family : families) {
    for (const auto& group : groups_of(board, family, region_rows, region_cols)) {
      std::vector<CellValue> seen;
      for (auto c : group) {
        const auto v = board.at(c);
        if (v == 0) continue;
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
        seen.push_back(v);
      }
    }
  }
  return true;
}

bool placement_conflicts(const Board& board, Coord c, CellValue v, int region_rows,
                         int region_cols) {
  for (int i = 0; i < board.cols(); ++i) {
    if (i != c.col && board.at({c.row, i}) == v) return true;
  }
  for (int i = 0; i < board.rows(); ++i) {
    if (i != c.row && board.at({i, c.col}) == v) return true;
  }
  if (region_rows > 0 && region_cols > 0) {
    const int r0 = c.row - c.row % region_rows;
    const int c0 = c.col - c.col % region_cols;
    for (int r = r0; r < r0 + region_rows && r < board.rows(); ++r) {
      for (int k = c0; k < c0 + region_cols && k < board.cols(); ++k) {
        if (Coord{r, k} != c && board.at({r, k}) == v) return true;
      }
    }
  }
  return false;
}

}  // namespace games
