#include <doctest.h>

#include <random>

#include "games/builtin.hpp"
#include "games/codec.hpp"
#include "games/dsl.hpp"
#include "games/error.hpp"
#include "games/rule_engine.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace games;

namespace {

std::vector<DiagCode> codes(const Diagnostics& d) {
  std::vector<DiagCode> out;
  for (const auto& x : d) out.push_back(x.code);
  return out;
}

json ttt_doc() { return to_json(tictactoe_definition({})); }

ParseResult parse(const json& j) { return parse_game_definition(j.dump()); }

}  // namespace

TEST_CASE("canonical tic-tac-toe document parses to the generator output") {
  auto text = testing::read_file(testing::corpus_dir() / "ttt-3x3.game.json");
  auto r = parse_game_definition(text);
  REQUIRE(r.ok());
  CHECK(*r.definition == tictactoe_definition({3, 3, 3, 2, TurnPolicy::RoundRobin}));
}

TEST_CASE("parse errors") {
  auto r = parse_game_definition("{");
  CHECK(codes(r.diagnostics) == std::vector<DiagCode>{DiagCode::E_PARSE});
  CHECK_FALSE(r.ok());

  CHECK(codes(parse_game_definition("[]").diagnostics) == std::vector<DiagCode>{DiagCode::E_PARSE});

  auto extra = ttt_doc();
  extra["colour"] = "red";
  auto re = parse(extra);
  REQUIRE(codes(re.diagnostics) == std::vector<DiagCode>{DiagCode::E_PARSE});
  CHECK(re.diagnostics[0].location == "/colour");

  auto missing = ttt_doc();
  missing.erase("rows");
  CHECK(codes(parse(missing).diagnostics) == std::vector<DiagCode>{DiagCode::E_PARSE});

  auto wrong_type = ttt_doc();
  wrong_type["rows"] = "three";
  CHECK(codes(parse(wrong_type).diagnostics) == std::vector<DiagCode>{DiagCode::E_PARSE});
}

TEST_CASE("unknown vocabulary") {
  auto doc = ttt_doc();
  doc["rules"][1]["conditions"][0] = {{"kind", "IsWizard"}};
  auto r = parse(doc);
  REQUIRE(codes(r.diagnostics) == std::vector<DiagCode>{DiagCode::E_UNKNOWN_CONDITION});
  CHECK(r.diagnostics[0].location == "/rules/1/conditions/0/kind");

  auto act = ttt_doc();
  act["rules"][0]["actions"][0] = {{"kind", "Explode"}};
  CHECK(codes(parse(act).diagnostics) == std::vector<DiagCode>{DiagCode::E_UNKNOWN_ACTION});
}

TEST_CASE("validate_definition accepts builtins") {
  CHECK(validate_definition(tictactoe_definition({})).empty());
  for (const auto& [name, def] : builtin_corpus()) {
    CAPTURE(name);
    CHECK(validate_definition(def).empty());
  }
}

TEST_CASE("validate_definition pins one code per fault") {
  auto ttt = tictactoe_definition({});

  auto tiles = ttt;
  tiles.win_pattern = Pattern::tiles({{{0, 0}, {1, 1}, {9, 9}}});
  CHECK(codes(validate_definition(tiles)) == std::vector<DiagCode>{DiagCode::E_OUT_OF_BOUNDS});

  auto sudoku = sudoku_definition({4, 2, 2, {}, 1});
  sudoku.region = RegionShape{2, 3};
  CHECK(codes(validate_definition(sudoku)) == std::vector<DiagCode>{DiagCode::E_REGION_TILING});

  auto players = ttt;
  players.min_players = 3;
  CHECK(codes(validate_definition(players)) == std::vector<DiagCode>{DiagCode::E_PLAYER_BOUNDS});

  auto domain = ttt;
  domain.value_domain = {1, 3};
  CHECK(codes(validate_definition(domain)) == std::vector<DiagCode>{DiagCode::E_PLAYER_BOUNDS});

  auto dims = ttt;
  dims.rows = 0;
  CHECK(codes(validate_definition(dims)).front() == DiagCode::E_OUT_OF_BOUNDS);

  auto cyc = ttt;
  cyc.rules[3].components = {"Check Winner"};
  cyc.rules[2].components = {"Switch Player"};
  CHECK(codes(validate_definition(cyc)) == std::vector<DiagCode>{DiagCode::E_CYCLE});

  auto dangling = ttt;
  dangling.rules[1].components.push_back("Nope");
  CHECK(codes(validate_definition(dangling)) == std::vector<DiagCode>{DiagCode::E_UNKNOWN_RULE});

  auto dup = ttt;
  dup.rules.push_back(dup.rules[3]);
  CHECK(codes(validate_definition(dup)) == std::vector<DiagCode>{DiagCode::E_UNKNOWN_RULE});
}

TEST_CASE("semantics guards") {
  auto ttt = tictactoe_definition({});
  auto wrong_action = ttt;
  wrong_action.rules[1].actions = {Action::simple(ActionKind::SetTileToEventValue)};
  CHECK(codes(validate_definition(wrong_action)) == std::vector<DiagCode>{DiagCode::E_SEMANTICS});

  auto sudoku = sudoku_definition({4, 2, 2, {}, 1});
  auto owned = sudoku;
  owned.rules[1].actions = {Action::simple(ActionKind::SetTileToCurrentPlayer)};
  CHECK(codes(validate_definition(owned)) == std::vector<DiagCode>{DiagCode::E_SEMANTICS});

  auto pattern = sudoku;
  pattern.win_pattern = Pattern::all_lines(4);
  CHECK(codes(validate_definition(pattern)) == std::vector<DiagCode>{DiagCode::E_SEMANTICS});

  auto no_pattern = ttt;
  no_pattern.win_pattern.reset();
  auto missing = codes(validate_definition(no_pattern));
  REQUIRE(!missing.empty());
  for (auto c : missing) CHECK(c == DiagCode::E_SEMANTICS);

  // Tile conditions need a coordinate, which GameStart does not carry.
  auto tile_on_start = ttt;
  tile_on_start.rules[0].conditions.push_back(Condition::simple(ConditionKind::TileEmpty));
  CHECK(codes(validate_definition(tile_on_start)) == std::vector<DiagCode>{DiagCode::E_SEMANTICS});

  auto given_value = sudoku_definition({4, 2, 2, {}, 1});
  given_value.givens = std::vector<std::vector<int>>{{7, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK(codes(validate_definition(given_value)) == std::vector<DiagCode>{DiagCode::E_SEMANTICS});
}

TEST_CASE("corpus files validate and round trip byte for byte") {
  auto files = testing::corpus_files(testing::corpus_dir());
  REQUIRE(files.size() == 6);
  for (const auto& f : files) {
    CAPTURE(f.string());
    const auto text = testing::read_file(f);
    auto r = parse_game_definition(text);
    REQUIRE(r.ok());
    const auto once = serialize_definition(*r.definition);
    CHECK(once == text);
    auto again = parse_game_definition(once);
    REQUIRE(again.ok());
    CHECK(*again.definition == *r.definition);
    CHECK(serialize_definition(*again.definition) == once);
  }
}

TEST_CASE("builtin corpus files are current") {
  for (const auto& [name, def] : builtin_corpus()) {
    CAPTURE(name);
    CHECK(testing::read_file(testing::corpus_dir() / (name + ".game.json")) ==
          serialize_definition(def));
  }
}

TEST_CASE("structurally equal definitions serialize identically") {
  auto a = tictactoe_definition({4, 4, 3, 2, TurnPolicy::RoundRobin});
  auto b = tictactoe_definition({4, 4, 3, 2, TurnPolicy::RoundRobin});
  CHECK(serialize_definition(a) == serialize_definition(b));
  // Key order in the source does not matter.
  auto shuffled = json::parse(serialize_definition(a));
  std::string reordered = "{\"rows\":4," + shuffled.dump().substr(1);
  reordered.erase(reordered.find(",\"rows\":4,"), std::string(",\"rows\":4").size());
  auto r = parse_game_definition(reordered);
  REQUIRE(r.ok());
  CHECK(serialize_definition(*r.definition) == serialize_definition(a));
}

TEST_CASE("composite and tile patterns round trip") {
  auto def = tictactoe_definition({});
  def.win_pattern = Pattern::composite(
      {Pattern::tiles({{{0, 0}, {0, 2}, {2, 0}, {2, 2}}}),
       Pattern::lines(3, {LineFamily::Rows, LineFamily::Diag})});
  REQUIRE(validate_definition(def).empty());
  auto r = parse_game_definition(serialize_definition(def));
  REQUIRE(r.ok());
  CHECK(*r.definition == def);
}

TEST_CASE("negative fixtures report exactly one code each") {
  const auto dir = testing::corpus_dir() / "negative";
  const std::vector<std::pair<std::string, DiagCode>> expected{
      {"cyclic-components.game.json", DiagCode::E_CYCLE},
      {"tile-out-of-bounds.game.json", DiagCode::E_OUT_OF_BOUNDS},
      {"sudoku-bad-region.game.json", DiagCode::E_REGION_TILING},
  };
  for (const auto& [file, code] : expected) {
    CAPTURE(file);
    auto r = parse_game_definition(testing::read_file(dir / file));
    CHECK(codes(r.diagnostics) == std::vector<DiagCode>{code});
  }
}

TEST_CASE("accepted definitions play to termination without engine faults") {
  std::mt19937_64 rng(21);
  std::vector<GameDefinition> defs;
  for (const auto& f : testing::corpus_files(testing::corpus_dir())) {
    defs.push_back(*parse_game_definition(testing::read_file(f)).definition);
  }
  for (const auto& def : defs) {
    const int games = def.semantics == Semantics::Ownership ? 5 : 2;
    for (int g = 0; g < games; ++g) {
      auto rg = testing::started_game(def, rng());
      CHECK_NOTHROW(rg = testing::random_play(rg, rng, 400));
      if (def.semantics == Semantics::Ownership) CHECK(rg.state == LifecycleState::Terminated);
    }
  }
}

// ---------------------------------------------------------------------------
// Generators

TEST_CASE("tic-tac-toe generator") {
  auto std3 = tictactoe_definition({3, 3, 3, 2, TurnPolicy::RoundRobin});
  CHECK(expand_pattern(*std3.win_pattern, 3, 3).size() == 8);
  auto big = tictactoe_definition({4, 4, 3, 2, TurnPolicy::RoundRobin});
  CHECK(big.rows == 4);
  CHECK(std::get<LinesPattern>(big.win_pattern->node).length == 3);
  auto four = tictactoe_definition({3, 3, 3, 4, TurnPolicy::RoundRobin});
  CHECK(four.max_players == 4);
  CHECK(four.value_domain == ValueDomain{1, 4});

  CHECK_THROWS_AS(tictactoe_definition({3, 3, 4, 2, TurnPolicy::RoundRobin}), GameError);
  CHECK_THROWS_AS(tictactoe_definition({3, 3, 3, 1, TurnPolicy::RoundRobin}), GameError);
}

TEST_CASE("parameter sweep validates cleanly") {
  auto defs = testing::sweep_definitions();
  CHECK(defs.size() > 100);
  for (const auto& def : defs) {
    CAPTURE(serialize_definition(def));
    CHECK(validate_definition(def).empty());
  }
}

TEST_CASE("sudoku generator") {
  auto nine = sudoku_definition({9, 3, 3, sample_sudoku_givens(), 1});
  CHECK(nine.max_players == 1);
  CHECK(nine.region == RegionShape{3, 3});
  CHECK(validate_definition(sudoku_definition({4, 2, 2, {}, 1})).empty());

  auto twice = sample_sudoku_givens();
  twice[0][8] = 5;  // row 0 already has a 5 at column 0
  try {
    sudoku_definition({9, 3, 3, twice, 1});
    FAIL("expected InvalidGivens");
  } catch (const GameError& e) {
    CHECK(e.code() == Errc::InvalidGivens);
  }
  CHECK_THROWS_AS(sudoku_definition({6, 0, 0, {}, 1}), GameError);
  CHECK(validate_definition(sudoku_definition({6, 2, 3, {}, 1})).empty());
}

TEST_CASE("sudoku legal moves") {
  auto def = sudoku_definition({9, 3, 3, sample_sudoku_givens(), 1});
  auto board = def.initial_board();
  CHECK_FALSE(sudoku_legal_move(board, {0, 2}, 5, 3, 3));  // row has 5
  CHECK_FALSE(sudoku_legal_move(board, {0, 0}, 1, 3, 3));  // given
  CHECK(sudoku_legal_move(board, {0, 2}, 4, 3, 3));
  CHECK(sudoku_legal_move(board, {0, 2}, 0, 3, 3));
  CHECK_THROWS_AS(sudoku_legal_move(board, {0, 2}, 10, 3, 3), GameError);
}

TEST_CASE("sudoku solved check agrees with the pairwise oracle") {
  const oracle::Grid solved{{1, 2, 3, 4}, {3, 4, 1, 2}, {2, 1, 4, 3}, {4, 3, 2, 1}};
  auto to_board = [](const oracle::Grid& g) {
    Board b(4, 4);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) b.force({r, c}, g[r][c]);
    }
    return b;
  };
  REQUIRE(oracle::sudoku_solved(solved, 2, 2));
  CHECK(sudoku_solved(to_board(solved), 2, 2));

  int mutations = 0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      for (int v = 0; v <= 4; ++v) {
        if (v == solved[r][c]) continue;
        auto g = solved;
        g[r][c] = v;
        CHECK(oracle::sudoku_solved(g, 2, 2) == sudoku_solved(to_board(g), 2, 2));
        CHECK_FALSE(sudoku_solved(to_board(g), 2, 2));
        ++mutations;
      }
    }
  }
  CHECK(mutations == 64);

  auto col_dup = solved;
  std::swap(col_dup[0][0], col_dup[0][1]);
  CHECK_FALSE(sudoku_solved(to_board(col_dup), 2, 2));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    oracle::Grid g(4, std::vector<int>(4));
    for (auto& row : g) {
      for (auto& v : row) v = static_cast<int>(rng() % 5);
    }
    CHECK(oracle::sudoku_solved(g, 2, 2) == sudoku_solved(to_board(g), 2, 2));
    CHECK(oracle::sudoku_consistent(g, 2, 2) ==
          groups_distinct(to_board(g),
                          std::vector<GroupFamily>{GroupFamily::Rows, GroupFamily::Cols,
                                                   GroupFamily::Regions},
                          2, 2));
  }
}

TEST_CASE("sudoku boards reached by legal moves stay consistent") {
  std::mt19937_64 rng(8);
  for (const auto& def : {sudoku_definition({4, 2, 2, {}, 1}),
                          sudoku_definition({9, 3, 3, sample_sudoku_givens(), 2})}) {
    const int rr = def.region->rows;
    const int rc = def.region->cols;
    for (int g = 0; g < 4; ++g) {
      auto rg = testing::started_game(def, rng());
      testing::random_play(rg, rng, 60, [&](const testing::StepRecord& s) {
        CHECK(oracle::sudoku_consistent(s.result.game.board.grid(), rr, rc));
        for (const auto& c : s.result.game.board.locked()) {
          CHECK(s.result.game.board.at(c) == s.before->board.at(c));
        }
      });
    }
  }
}

TEST_CASE("tic-tac-toe terminates within rows*cols placements") {
  std::mt19937_64 rng(13);
  for (const auto& def : testing::sweep_definitions()) {
    if (def.semantics != Semantics::Ownership) continue;
    auto rg = testing::started_game(def, rng());
    int placements = 0;
    while (rg.state == LifecycleState::Started) {
      auto evs = legal_events(rg);
      REQUIRE(!evs.empty());
      rg = step(rg, evs[rng() % evs.size()]).game;
      ++placements;
      REQUIRE(placements <= def.rows * def.cols);
    }
    CHECK(rg.state == LifecycleState::Terminated);
  }
}
