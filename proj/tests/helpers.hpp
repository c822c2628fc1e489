#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "games/analyzer.hpp"
#include "games/builtin.hpp"
#include "games/dsl.hpp"
#include "games/rule_engine.hpp"
#include "games/running_game.hpp"

namespace testing {

inline std::filesystem::path corpus_dir() { return GAMES_CORPUS_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().string().ends_with(".game.json")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Generator parameter grid: tic-tac-toe over rows, cols in {3,4,5},
// line_len in {3,4}, players in {2,3,4}, both turn policies; sudoku sides
// 4 and 9 with one or two players.
inline std::vector<games::GameDefinition> sweep_definitions() {
  using namespace games;
  std::vector<GameDefinition> out;
  for (int rows : {3, 4, 5}) {
    for (int cols : {3, 4, 5}) {
      for (int len : {3, 4}) {
        if (len > std::max(rows, cols)) continue;
        for (int players : {2, 3, 4}) {
          for (auto policy : {TurnPolicy::RoundRobin, TurnPolicy::Random}) {
            out.push_back(tictactoe_definition({rows, cols, len, players, policy}));
          }
        }
      }
    }
  }
  for (int players : {1, 2}) {
    out.push_back(sudoku_definition({4, 0, 0, {}, players}));
    out.push_back(sudoku_definition({9, 0, 0, sample_sudoku_givens(), players}));
  }
  return out;
}

inline games::RunningGame join_all(games::RunningGame rg, int players) {
  for (int i = 1; i <= players; ++i) {
    rg = games::step(rg, games::Event::player_join("Player" + std::to_string(i),
                                                   games::PlayerKind::Human))
             .game;
  }
  return rg;
}

inline games::RunningGame started_game(const games::GameDefinition& def, std::uint64_t seed,
                                       int players = 0) {
  auto rg = games::create_running_game(def, "t", seed);
  rg = join_all(std::move(rg), players > 0 ? players : def.min_players);
  return games::step(rg, games::Event::game_start(1)).game;
}

// Every TileClick a client could send: all cells, the current player and
// also a wrong player, each value of the domain plus 0 for symbols games.
inline std::vector<games::Event> candidate_clicks(const games::RunningGame& rg) {
  using namespace games;
  std::vector<Event> out;
  const int cur = rg.current_player_id();
  const int other = rg.players.empty() ? 1 : (cur % static_cast<int>(rg.players.size())) + 1;
  for (int r = 0; r < rg.board.rows(); ++r) {
    for (int c = 0; c < rg.board.cols(); ++c) {
      for (int actor : {cur, other}) {
        if (rg.def().semantics == Semantics::Symbols) {
          for (int v = 0; v <= rg.def().value_domain.hi; ++v) {
            out.push_back(Event::tile_click(actor, {r, c}, v));
          }
        } else {
          out.push_back(Event::tile_click(actor, {r, c}));
        }
      }
    }
  }
  return out;
}

struct StepRecord {
  games::Event event;
  games::DispatchResult result;
  const games::RunningGame* before;
};

// Random play: mostly legal moves, with one in four events drawn from every
// candidate click so rejections are exercised too. Stops at termination or
// after `max_events`.
inline games::RunningGame random_play(games::RunningGame rg, std::mt19937_64& rng,
                                      int max_events,
                                      const std::function<void(const StepRecord&)>& on_step = {}) {
  using namespace games;
  for (int i = 0; i < max_events && rg.state == LifecycleState::Started; ++i) {
    std::vector<Event> pool;
    if (rng() % 4 == 0) {
      pool = candidate_clicks(rg);
    } else {
      pool = legal_events(rg);
      if (pool.empty()) pool = candidate_clicks(rg);
    }
    const Event ev = pool[rng() % pool.size()];
    auto result = step(rg, ev);
    if (on_step) on_step(StepRecord{ev, result, &rg});
    rg = std::move(result.game);
  }
  return rg;
}

}  // namespace testing
