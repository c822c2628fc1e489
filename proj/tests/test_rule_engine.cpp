#include <doctest.h>

#include <random>

#include "games/builtin.hpp"
#include "games/error.hpp"
#include "games/rule_engine.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace games;

namespace {

GameDefinition ttt(int rows = 3, int cols = 3, int len = 3, int players = 2) {
  return tictactoe_definition({rows, cols, len, players, TurnPolicy::RoundRobin});
}

std::vector<CommandKind> kinds(const std::vector<Command>& cmds) {
  std::vector<CommandKind> out;
  for (const auto& c : cmds) out.push_back(c.kind);
  return out;
}

std::set<oracle::Window> as_windows(const std::vector<CoordList>& lists) {
  std::set<oracle::Window> out;
  for (const auto& l : lists) {
    oracle::Window w;
    for (auto c : l) w.push_back({c.row, c.col});
    std::sort(w.begin(), w.end());
    out.insert(w);
  }
  return out;
}

RunningGame with_board(RunningGame rg, const std::vector<std::vector<int>>& cells) {
  for (int r = 0; r < static_cast<int>(cells.size()); ++r) {
    for (int c = 0; c < static_cast<int>(cells[r].size()); ++c) rg.board.force({r, c}, cells[r][c]);
  }
  return rg;
}

}  // namespace

TEST_CASE("GameStart with enough players starts the game") {
  auto rg = testing::join_all(create_running_game(ttt(), "g", 1), 2);
  auto res = dispatch_event(rg, Event::game_start(1));
  CHECK(res.game.state == LifecycleState::Started);
  CHECK(res.fired == std::vector<std::string>{"Game Start"});
  CHECK(kinds(res.commands) == std::vector<CommandKind>{CommandKind::SetState,
                                                        CommandKind::SetCurrentPlayer,
                                                        CommandKind::Message});
  CHECK(res.commands.back().text == "Game started");
  CHECK(res.game.current_player_id() == 1);
}

TEST_CASE("GameStart without enough players fires nothing") {
  auto rg = testing::join_all(create_running_game(ttt(), "g", 1), 1);
  auto res = step(rg, Event::game_start(1));
  CHECK(res.fired.empty());
  CHECK(res.game == rg);
  CHECK(explain_rejection(rg, Event::game_start(1)).code == "NotEnoughPlayers");
}

TEST_CASE("TileClick sets owner then switches player") {
  auto rg = testing::started_game(ttt(), 1);
  auto res = step(rg, Event::tile_click(1, {0, 0}));
  CHECK(res.game.board.at({0, 0}) == 1);
  CHECK(res.game.current_player_id() == 2);
  CHECK(kinds(res.commands) ==
        std::vector<CommandKind>{CommandKind::SetTile, CommandKind::SetCurrentPlayer});
  CHECK(res.fired == std::vector<std::string>{"Tile Click", "Switch Player"});
}

TEST_CASE("TileClick on an occupied tile changes nothing") {
  auto rg = testing::started_game(ttt(), 1);
  rg = step(rg, Event::tile_click(1, {0, 0})).game;
  auto res = step(rg, Event::tile_click(2, {0, 0}));
  CHECK(res.fired.empty());
  CHECK(res.commands.empty());
  CHECK(res.game == rg);
  auto why = explain_rejection(rg, Event::tile_click(2, {0, 0}));
  CHECK(why.code == "TileTaken");
  CHECK(why.reason == "tile is taken");
}

TEST_CASE("wrong actor is rejected as not your turn") {
  auto rg = testing::started_game(ttt(), 1);
  const Rule& click = *rg.def().find_rule("Tile Click");
  auto run = run_rule(rg, click, Event::tile_click(2, {0, 0}));
  CHECK_FALSE(run.fired);
  CHECK(run.game == rg);
  CHECK(explain_rejection(rg, Event::tile_click(2, {0, 0})).reason == "not your turn");
}

TEST_CASE("a rule without conditions always fires") {
  auto rg = testing::started_game(ttt(), 1);
  Rule r{"Hello", Trigger::TileClick, {}, {Action::message("hi")}, {}};
  auto run = run_rule(rg, r, Event::tile_click(2, {0, 0}));
  CHECK(run.fired);
  REQUIRE(run.commands.size() == 1);
  CHECK(run.commands[0].kind == CommandKind::Message);
}

TEST_CASE("condition evaluation") {
  auto rg = testing::started_game(ttt(), 1);
  const auto click = Event::tile_click(1, {1, 1});
  CHECK(eval_condition(rg, click, Condition::simple(ConditionKind::TileEmpty)));

  auto row = with_board(rg, {{1, 1, 1}});
  CHECK(eval_condition(row, click, Condition::pattern_owned()));
  CHECK(eval_condition(row, click, Condition::pattern_owned(Pattern::tiles({{{0, 0}, {0, 1}, {0, 2}}}))));
  CHECK_FALSE(eval_condition(rg, click, Condition::pattern_owned()));

  auto almost = with_board(rg, {{1, 2, 1}, {2, 1, 2}, {2, 1, 0}});
  CHECK_FALSE(eval_condition(almost, click, Condition::simple(ConditionKind::BoardFull)));

  CHECK_THROWS_AS(eval_condition(rg, Event::game_start(1), Condition::simple(ConditionKind::TileEmpty)),
                  GameError);
  CHECK_THROWS_AS(
      eval_condition(rg, click, Condition::simple(ConditionKind::LegalSymbolPlacement)),
      GameError);
}

TEST_CASE("winner and message actions") {
  auto rg = testing::started_game(ttt(), 1);
  auto [won, cmds] = apply_action(rg, Event::tile_click(1, {0, 0}),
                                  Action::simple(ActionKind::SetWinnerCurrent));
  CHECK(won.state == LifecycleState::Terminated);
  CHECK(won.outcome == Outcome::won_by(1));
  REQUIRE(cmds.size() == 2);
  CHECK(cmds[0].kind == CommandKind::SetWinner);
  CHECK(cmds[0].player == 1);
  CHECK(cmds[1].kind == CommandKind::SetState);
  CHECK(cmds[1].state == LifecycleState::Terminated);

  auto [msg, mcmds] = apply_action(rg, Event::game_start(1), Action::message("Game started"));
  CHECK(msg.board == rg.board);
  REQUIRE(mcmds.size() == 1);
  CHECK(mcmds[0].kind == CommandKind::Message);

  try {
    apply_action(rg, Event::tile_click(1, {0, 0}, 1), Action::simple(ActionKind::SetTileToEventValue));
    FAIL("expected SemanticsError");
  } catch (const GameError& e) {
    CHECK(e.code() == Errc::SemanticsError);
  }
}

TEST_CASE("pattern expansion counts") {
  CHECK(expand_pattern(Pattern::all_lines(3), 3, 3).size() == 8);
  CHECK(expand_pattern(Pattern::all_lines(4), 4, 4).size() == 10);
  CHECK(expand_pattern(Pattern::all_lines(3), 4, 4).size() == 24);
  CHECK(expand_pattern(Pattern::all_lines(4), 3, 3).empty());
}

TEST_CASE("pattern expansion matches the window oracle") {
  for (int rows = 1; rows <= 6; ++rows) {
    for (int cols = 1; cols <= 6; ++cols) {
      for (int len = 1; len <= 6; ++len) {
        CAPTURE(rows);
        CAPTURE(cols);
        CAPTURE(len);
        auto got = expand_pattern(Pattern::all_lines(len), rows, cols);
        CHECK(as_windows(got) == oracle::all_windows(rows, cols, len));
        CHECK(as_windows(got).size() == got.size());

        auto row_only = expand_pattern(Pattern::lines(len, {LineFamily::Rows}), rows, cols);
        CHECK(row_only.size() == static_cast<std::size_t>(len <= cols ? rows * (cols - len + 1) : 0));
        auto col_only = expand_pattern(Pattern::lines(len, {LineFamily::Cols}), rows, cols);
        CHECK(col_only.size() == static_cast<std::size_t>(len <= rows ? cols * (rows - len + 1) : 0));
        auto diag = expand_pattern(Pattern::lines(len, {LineFamily::Diag}), rows, cols);
        CHECK(as_windows(diag) == oracle::all_windows(rows, cols, len, false, false, true, false));
        auto anti = expand_pattern(Pattern::lines(len, {LineFamily::Antidiag}), rows, cols);
        CHECK(as_windows(anti) == oracle::all_windows(rows, cols, len, false, false, false, true));
      }
    }
  }
}

TEST_CASE("pattern expansion order and composites") {
  auto lines = expand_pattern(Pattern::all_lines(3), 3, 3);
  CHECK(lines.front() == CoordList{{0, 0}, {0, 1}, {0, 2}});
  CHECK(lines[3] == CoordList{{0, 0}, {1, 0}, {2, 0}});
  CHECK(lines[6] == CoordList{{0, 0}, {1, 1}, {2, 2}});
  CHECK(lines[7] == CoordList{{0, 2}, {1, 1}, {2, 0}});

  auto corners = Pattern::tiles({{{0, 0}, {0, 2}, {2, 0}, {2, 2}}});
  auto mixed = Pattern::composite({corners, Pattern::all_lines(3), Pattern::all_lines(3)});
  auto got = expand_pattern(mixed, 3, 3);
  CHECK(got.size() == 9);
  CHECK(got.front() == CoordList{{0, 0}, {0, 2}, {2, 0}, {2, 2}});

  CHECK_THROWS_AS(expand_pattern(Pattern::tiles({{{9, 9}}}), 3, 3), GameError);
}

TEST_CASE("check_winner") {
  auto rg = testing::started_game(ttt(), 1);
  const auto p = *rg.def().win_pattern;
  CHECK(check_winner(with_board(rg, {{1, 1, 1}}), p) == 1);
  CHECK_FALSE(check_winner(rg, p).has_value());
  CHECK(check_winner(with_board(rg, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}), p) == 2);
  CHECK(check_winner(with_board(rg, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), p) == 1);
}

TEST_CASE("round-robin switching wraps") {
  auto rg = testing::started_game(ttt(), 1);
  auto [g2, cmd] = switch_player(rg);
  CHECK(g2.current_player_id() == 2);
  CHECK(cmd.kind == CommandKind::SetCurrentPlayer);
  auto [g1, cmd2] = switch_player(g2);
  CHECK(g1.current_player_id() == 1);
  CHECK(cmd2.player == 1);

  auto idle = create_running_game(ttt(), "g", 1);
  CHECK_THROWS_AS(switch_player(idle), GameError);
}

TEST_CASE("random switching is seeded and never repeats the current player") {
  auto def = tictactoe_definition({3, 3, 3, 4, TurnPolicy::Random});
  auto rg = testing::started_game(def, 77);
  auto a = switch_player(rg);
  auto b = switch_player(rg);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);

  std::set<int> seen;
  auto cur = rg;
  for (int i = 0; i < 40; ++i) {
    auto [next, cmd] = switch_player(cur);
    CHECK(next.current_player_id() != cur.current_player_id());
    seen.insert(next.current_player_id());
    cur = next;
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("rule graph validation") {
  auto def = ttt();
  CHECK(validate_rule_graph(def.rules).empty());

  std::vector<Rule> dangling{{"A", Trigger::TileClick, {}, {}, {"nosuch"}}};
  auto d1 = validate_rule_graph(dangling);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].code == DiagCode::E_UNKNOWN_RULE);
  CHECK(d1[0].message.find("nosuch") != std::string::npos);

  std::vector<Rule> cyc{{"A", Trigger::TileClick, {}, {}, {"B"}},
                        {"B", Trigger::Component, {}, {}, {"A"}}};
  auto d2 = validate_rule_graph(cyc);
  REQUIRE(d2.size() == 1);
  CHECK(d2[0].code == DiagCode::E_CYCLE);
  CHECK(d2[0].message.find("A -> B -> A") != std::string::npos);

  std::vector<Rule> self{{"A", Trigger::TileClick, {}, {}, {"A"}}};
  REQUIRE(validate_rule_graph(self).size() == 1);
}

TEST_CASE("unknown component at run time throws") {
  auto rg = testing::started_game(ttt(), 1);
  Rule r{"A", Trigger::TileClick, {}, {}, {"missing"}};
  try {
    run_rule(rg, r, Event::tile_click(1, {0, 0}));
    FAIL("expected UnknownRule");
  } catch (const GameError& e) {
    CHECK(e.code() == Errc::UnknownRule);
  }
}

TEST_CASE("draw after a full board with no line") {
  auto rg = testing::started_game(ttt(), 1);
  // X O X / X O O / O X X
  const std::vector<Coord> order{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 0},
                                 {1, 2}, {2, 1}, {2, 0}, {2, 2}};
  for (auto c : order) {
    auto res = step(rg, Event::tile_click(rg.current_player_id(), c));
    REQUIRE(!res.fired.empty());
    rg = res.game;
  }
  CHECK(rg.state == LifecycleState::Terminated);
  CHECK(rg.outcome == Outcome::draw());
  CHECK_FALSE(check_winner(rg, *rg.def().win_pattern).has_value());
  CHECK(explain_rejection(rg, Event::tile_click(1, {0, 0})).reason == "wrong state: game is over");
}

TEST_CASE("Overall Pattern agrees with hand-listed tiles on every 3x3 filling") {
  auto rg = testing::started_game(ttt(), 1);
  std::vector<std::vector<Coord>> hand;
  for (const auto& w : oracle::ttt_lines_by_hand()) {
    std::vector<Coord> l;
    for (auto [r, c] : w) l.push_back({r, c});
    hand.push_back(l);
  }
  const auto overall = Pattern::all_lines(3);
  const auto tiles = Pattern::tiles(hand);
  int mismatches = 0;
  int won = 0;
  for (int code = 0; code < 19683; ++code) {
    int x = code;
    for (int i = 0; i < 9; ++i) {
      rg.board.force({i / 3, i % 3}, x % 3);
      x /= 3;
    }
    auto a = check_winner(rg, overall);
    auto b = check_winner(rg, tiles);
    if (a != b) ++mismatches;
    if (a) ++won;
  }
  CHECK(mismatches == 0);
  CHECK(won > 0);
}

TEST_CASE("dispatch is deterministic") {
  std::mt19937_64 rng(3);
  for (const auto& def : testing::sweep_definitions()) {
    auto rg = testing::started_game(def, rng());
    auto evs = testing::candidate_clicks(rg);
    for (int i = 0; i < 5; ++i) {
      const auto& ev = evs[rng() % evs.size()];
      auto a = step(rg, ev);
      auto b = step(rg, ev);
      CHECK(a.game == b.game);
      CHECK(a.commands == b.commands);
      CHECK(a.fired == b.fired);
    }
  }
}

TEST_CASE("rejected clicks leave the game bit-identical") {
  std::mt19937_64 rng(11);
  int rejected = 0;
  for (const auto& def : testing::sweep_definitions()) {
    auto rg = testing::started_game(def, rng());
    testing::random_play(rg, rng, 30, [&](const testing::StepRecord& s) {
      if (s.result.fired.empty()) {
        ++rejected;
        CHECK(s.result.game == *s.before);
        CHECK(snapshot(s.result.game) == snapshot(*s.before));
        CHECK(s.result.commands.empty());
        CHECK_FALSE(explain_rejection(*s.before, s.event).reason.empty());
      } else {
        CHECK(s.result.fired.front() == "Tile Click");
      }
    });
  }
  CHECK(rejected > 0);
}
