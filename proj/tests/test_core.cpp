#include <doctest.h>

#include "games/builtin.hpp"
#include "games/codec.hpp"
#include "games/error.hpp"
#include "games/rule_engine.hpp"
#include "games/running_game.hpp"
#include "helpers.hpp"

using namespace games;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const GameError& e) {
    return e.code();
  }
  FAIL("expected a GameError");
  return Errc::IoError;
}

GameDefinition ttt() { return tictactoe_definition({}); }

}  // namespace

TEST_CASE("new_board fills every cell") {
  auto b = new_board(3, 3, 0);
  CHECK(b.rows() == 3);
  CHECK(b.cols() == 3);
  CHECK(std::all_of(b.cells().begin(), b.cells().end(), [](int v) { return v == 0; }));
  CHECK(new_board(4, 4, 0).size() == 16);
  CHECK(code_of([] { new_board(0, 3, 0); }) == Errc::InvalidDimensions);
  CHECK(code_of([] { new_board(3, -1, 0); }) == Errc::InvalidDimensions);
}

TEST_CASE("get_cell and set_cell") {
  auto b = new_board(3, 3, 0);
  CHECK(get_cell(b, {1, 1}) == 0);
  auto b2 = set_cell(b, {0, 0}, 1);
  CHECK(get_cell(b2, {0, 0}) == 1);
  CHECK(get_cell(b, {0, 0}) == 0);
  CHECK(code_of([&] { set_cell(b, {5, 5}, 1); }) == Errc::OutOfBounds);
  CHECK(code_of([&] { get_cell(b, {-1, 0}); }) == Errc::OutOfBounds);
}

TEST_CASE("locked cells refuse set but accept force") {
  Board b(2, 2);
  b.force({0, 0}, 3);
  b.lock({0, 0});
  CHECK(code_of([&] { b.set({0, 0}, 1); }) == Errc::LockedCell);
  b.force({0, 0}, 4);
  CHECK(b.at({0, 0}) == 4);
  CHECK(b.is_locked({0, 0}));
  CHECK_FALSE(b.is_locked({1, 1}));
}

TEST_CASE("groups_of covers rows, cols and tiling regions") {
  Board b(4, 4);
  CHECK(groups_of(b, GroupFamily::Rows, 2, 2).size() == 4);
  CHECK(groups_of(b, GroupFamily::Cols, 2, 2).size() == 4);
  auto regions = groups_of(b, GroupFamily::Regions, 2, 2);
  REQUIRE(regions.size() == 4);
  CHECK(regions[1] == std::vector<Coord>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  CHECK(groups_of(b, GroupFamily::Regions, 2, 3).empty());
}

TEST_CASE("create_running_game starts NotStarted with an empty board") {
  auto rg = create_running_game(ttt(), "g1", 7);
  CHECK(rg.state == LifecycleState::NotStarted);
  CHECK(rg.players.empty());
  CHECK(rg.board == Board(3, 3));
  CHECK(rg.rng_seed == 7);
  CHECK(rg.current_player_id() == 0);
}

TEST_CASE("create_running_game copies and locks sudoku givens") {
  auto def = sudoku_definition({9, 3, 3, sample_sudoku_givens(), 1});
  auto rg = create_running_game(def, "g2", 7);
  CHECK(rg.board.grid() == sample_sudoku_givens());
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      CHECK(rg.board.is_locked({r, c}) == (sample_sudoku_givens()[r][c] != 0));
    }
  }
}

TEST_CASE("create_running_game rejects an invalid definition") {
  auto def = ttt();
  def.min_players = 0;
  CHECK(code_of([&] { create_running_game(def, "g", 1); }) == Errc::InvalidDefinition);
}

TEST_CASE("join_player assigns dense ids and enforces bounds") {
  auto rg = create_running_game(ttt(), "g", 1);
  rg = join_player(rg, "Player1", PlayerKind::Human);
  CHECK(rg.players.back().id == 1);
  rg = join_player(rg, "Player2", PlayerKind::Robot);
  CHECK(rg.players.back().id == 2);
  CHECK(rg.players.back().kind == PlayerKind::Robot);
  CHECK(code_of([&] { join_player(rg, "Player3", PlayerKind::Human); }) == Errc::GameFull);

  auto started = step(rg, Event::game_start(1)).game;
  auto def3 = tictactoe_definition({3, 3, 3, 3, TurnPolicy::RoundRobin});
  auto rg3 = testing::started_game(def3, 1);
  CHECK(code_of([&] { join_player(started, "Late", PlayerKind::Human); }) == Errc::WrongState);
  CHECK(code_of([&] { join_player(rg3, "Late", PlayerKind::Human); }) == Errc::WrongState);
}

TEST_CASE("replica applies commands in seq order") {
  GameView v = initial_view(ttt());
  auto set = Command::set_tile({0, 0}, 1);
  set.seq = 1;
  apply_command(v, set);
  CHECK(v.board.at({0, 0}) == 1);

  auto started = Command::set_state(LifecycleState::Started);
  started.seq = 2;
  apply_command(v, started);
  CHECK(v.state == LifecycleState::Started);

  GameView fresh = initial_view(ttt());
  apply_command(fresh, set);
  auto late = Command::set_current_player(2);
  late.seq = 3;
  CHECK(code_of([&] { apply_command(fresh, late); }) == Errc::OutOfOrder);
  CHECK(fresh.last_seq == 1);
}

TEST_CASE("snapshot round trip of a fresh game") {
  auto rg = create_running_game(ttt(), "g1", 42);
  auto back = restore(snapshot(rg));
  CHECK(back == rg);
  CHECK(snapshot(back) == snapshot(rg));
}

TEST_CASE("snapshot round trip mid-game keeps history and seed") {
  auto rg = testing::started_game(ttt(), 99);
  for (Coord c : {Coord{0, 0}, Coord{1, 1}, Coord{2, 2}}) {
    rg = step(rg, Event::tile_click(rg.current_player_id(), c)).game;
  }
  REQUIRE(rg.board.at({1, 1}) == 2);
  auto back = restore(snapshot(rg));
  CHECK(back == rg);
  CHECK(back.history == rg.history);
  CHECK(back.rng_seed == 99);
  CHECK(back.current_player_id() == rg.current_player_id());
}

TEST_CASE("restore rejects damaged snapshots") {
  CHECK(code_of([] { restore(""); }) == Errc::CorruptSnapshot);
  CHECK(code_of([] { restore("{}"); }) == Errc::CorruptSnapshot);
  CHECK(code_of([] { restore("[1,2]"); }) == Errc::CorruptSnapshot);

  auto rg = testing::started_game(ttt(), 5);
  rg = step(rg, Event::tile_click(1, {0, 0})).game;
  auto j = json::parse(snapshot(rg));

  auto gap = j;
  gap["last_seq"] = j["last_seq"].get<int>() + 1;
  CHECK(code_of([&] { restore(gap.dump()); }) == Errc::CorruptSnapshot);

  auto bad_cell = j;
  bad_cell["board"]["cells"][0][0] = "x";
  CHECK(code_of([&] { restore(bad_cell.dump()); }) == Errc::CorruptSnapshot);

  auto bad_def = j;
  bad_def["definition"]["rows"] = 0;
  CHECK(code_of([&] { restore(bad_def.dump()); }) == Errc::CorruptSnapshot);
}

TEST_CASE("random turns are reproducible from the seed") {
  auto def = tictactoe_definition({4, 4, 3, 4, TurnPolicy::Random});
  auto a = testing::started_game(def, 1234);
  auto b = testing::started_game(def, 1234);
  for (int i = 0; i < 6 && a.state == LifecycleState::Started; ++i) {
    auto evs = legal_events(a);
    REQUIRE(!evs.empty());
    a = step(a, evs.front()).game;
    b = step(b, evs.front()).game;
    CHECK(a == b);
  }
  auto restored = restore(snapshot(a));
  auto evs = legal_events(a);
  if (!evs.empty()) CHECK(step(restored, evs.front()).game == step(a, evs.front()).game);
}

TEST_CASE("describe outcomes") {
  CHECK(describe(Outcome::won_by(1)) == "winner: 1");
  CHECK(describe(Outcome::draw()) == "draw");
  CHECK(describe(Outcome::abandoned()) == "abandoned");
}
