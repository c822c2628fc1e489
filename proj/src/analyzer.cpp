#include "games/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "games/codec.hpp"
#include "games/error.hpp"
#include "games/rule_engine.hpp"

namespace games {
namespace {

struct Successor {
  Event event;
  RunningGame game;
};

// Every candidate TileClick that changes the game, with the game after the
// full move (dispatch plus termination check).
std::vector<Successor> successors(const RunningGame& rg) {
  std::vector<Successor> out;
  if (rg.state == LifecycleState::Terminated) return out;
  const auto& def = rg.def();
  const int actor = rg.current_player_id();

  std::vector<std::optional<CellValue>> values;
  if (def.semantics == Semantics::Ownership) {
    values.push_back(std::nullopt);
  } else {
    values.push_back(0);
    for (int v = def.value_domain.lo; v <= def.value_domain.hi; ++v) values.push_back(v);
  }

  for (int r = 0; r < rg.board.rows(); ++r) {
    for (int c = 0; c < rg.board.cols(); ++c) {
      for (auto v : values) {
        auto ev = Event::tile_click(actor, {r, c}, v);
        auto result = step(rg, ev);
        if (!result.fired.empty()) out.push_back({std::move(ev), std::move(result.game)});
      }
    }
  }
  return out;
}

std::string state_key(const RunningGame& rg) {
  std::string key;
  const auto cells = rg.board.cells();
  key.reserve(cells.size() + 1);
  for (auto v : cells) key.push_back(static_cast<char>(v));
  key.push_back(static_cast<char>(rg.current_player_id()));
  return key;
}

class WinSearch {
 public:
  explicit WinSearch(std::uint64_t max_states) : max_states_(max_states) {}

  bool explore(const RunningGame& rg) {
    if (exhausted_) return false;
    auto key = state_key(rg);
    if (visited_.contains(key)) return false;
    if (visited_.size() >= max_states_) {
      exhausted_ = true;
      return false;
    }
    visited_.insert(std::move(key));
    for (auto& next : successors(rg)) {
      next.game.history.clear();
      const auto& o = next.game.outcome;
      if (o && o->kind == OutcomeKind::Winner) return true;
      if (next.game.state == LifecycleState::Started && explore(next.game)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  std::uint64_t states() const noexcept { return visited_.size(); }
  bool exhausted() const noexcept { return exhausted_; }

 private:
  std::uint64_t max_states_;
  bool exhausted_ = false;
  std::unordered_set<std::string> visited_;
};

double numeric_distance(double x, double y) {
  if (x == y) return 0.0;
  const double m = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) / m;
}

double categorical_distance(bool equal) { return equal ? 0.0 : 1.0; }

}  // namespace

std::vector<Event> legal_events(const RunningGame& rg) {
  std::vector<Event> out;
  for (auto& s : successors(rg)) out.push_back(std::move(s.event));
  return out;
}

WinnableReport winnable(const GameDefinition& def, int players, const SearchBudget& budget) {
  if (def.semantics != Semantics::Ownership) {
    throw GameError(Errc::SemanticsError,
                    "winnability is defined for ownership games; symbols games are completion "
                    "puzzles");
  }
  if (players < 1) throw GameError(Errc::InvalidParams, "players must be >= 1");

  WinnableReport report;
  if (budget.max_states == 0) {
    report.budget_exhausted = true;
    return report;
  }

  // Analysis copy: exactly `players` seats, round-robin turns.
  GameDefinition analysed = def;
  analysed.min_players = players;
  analysed.max_players = players;
  analysed.value_domain = {1, players};
  analysed.turn_policy = TurnPolicy::RoundRobin;

  auto rg = create_running_game(std::move(analysed), "analysis", 0);
  for (int i = 1; i <= players; ++i) {
    rg = join_player(std::move(rg), "Player" + std::to_string(i), PlayerKind::Robot);
  }
  rg = step(rg, Event::game_start(1)).game;
  rg.history.clear();

  if (rg.state != LifecycleState::Started) {
    report.verdict = (rg.outcome && rg.outcome->kind == OutcomeKind::Winner) ? Verdict::True
                                                                              : Verdict::False;
    return report;
  }

  WinSearch search(budget.max_states);
  const bool found = search.explore(rg);
  report.states_explored = search.states();
  report.budget_exhausted = search.exhausted();
  report.verdict = found ? Verdict::True : (search.exhausted() ? Verdict::Unknown : Verdict::False);
  return report;
}

MinPlayersReport min_players_without_winner(const GameDefinition& def, int n_max,
                                            const SearchBudget& budget) {
  if (n_max < 2) throw GameError(Errc::InvalidParams, "n_max must be >= 2");
  MinPlayersReport report;
  for (int n = 2; n <= n_max; ++n) {
    auto r = winnable(def, n, budget);
    report.states_explored += r.states_explored;
    report.scan.emplace_back(n, r.verdict);
    if (r.verdict == Verdict::Unknown) {
      report.verdict = Verdict::Unknown;
      report.budget_exhausted = true;
      return report;
    }
    if (r.verdict == Verdict::False) {
      report.verdict = Verdict::True;
      report.players = n;
      return report;
    }
  }
  report.verdict = Verdict::False;
  return report;
}

FeatureVector features_of(const GameDefinition& def) {
  FeatureVector f;
  f.rows = def.rows;
  f.cols = def.cols;
  if (def.win_pattern) {
    f.pattern_fingerprint = to_json(*def.win_pattern).dump();
    if (const auto* lines = std::get_if<LinesPattern>(&def.win_pattern->node)) {
      f.line_len = lines->length;
      f.line_families = lines->families;
    }
  }
  f.semantics = def.semantics;
  f.turn_policy = def.turn_policy;
  f.min_players = def.min_players;
  f.max_players = def.max_players;
  f.domain_size = def.value_domain.size();
  return f;
}

double ontology_distance(const GameDefinition& a, const GameDefinition& b,
                         const DistanceWeights& w) {
  const auto fa = features_of(a);
  const auto fb = features_of(b);

  const double dims = (numeric_distance(fa.rows, fb.rows) + numeric_distance(fa.cols, fb.cols)) / 2;
  double pattern = 0.0;
  if (fa.line_len && fb.line_len && fa.line_families == fb.line_families) {
    pattern = numeric_distance(*fa.line_len, *fb.line_len);
  } else {
    pattern = categorical_distance(fa.pattern_fingerprint == fb.pattern_fingerprint);
  }
  const double semantics = categorical_distance(fa.semantics == fb.semantics);
  const double turns = categorical_distance(fa.turn_policy == fb.turn_policy);
  const double players = (numeric_distance(fa.min_players, fb.min_players) +
                          numeric_distance(fa.max_players, fb.max_players)) / 2;
  const double domain = numeric_distance(fa.domain_size, fb.domain_size);

  const double total = w.dims + w.pattern + w.semantics + w.turn_policy + w.players + w.domain;
  if (total <= 0) throw GameError(Errc::InvalidParams, "distance weights must sum to > 0");
  return (w.dims * dims + w.pattern * pattern + w.semantics * semantics + w.turn_policy * turns +
          w.players * players + w.domain * domain) / total;
}

bool same_type(const GameDefinition& a, const GameDefinition& b, double threshold,
               const DistanceWeights& w) {
  return ontology_distance(a, b, w) <= threshold;
}

}  // namespace games
