#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "games/definition.hpp"
#include "games/running_game.hpp"

namespace games {

enum class Verdict { True, False, Unknown };
std::string_view to_string(Verdict v);

struct SearchBudget {
  std::uint64_t max_states = 1'000'000;
};

struct WinnableReport {
  Verdict verdict = Verdict::Unknown;
  std::uint64_t states_explored = 0;
  bool budget_exhausted = false;
};

struct MinPlayersReport {
  // True: `players` holds the answer. False: every tested count is winnable.
  // Unknown: some count exhausted the budget.
  Verdict verdict = Verdict::Unknown;
  std::optional<int> players;
  std::uint64_t states_explored = 0;
  bool budget_exhausted = false;
  std::vector<std::pair<int, Verdict>> scan;  // per tested player count
};

/// TileClick events whose dry-run dispatch fires a rule.
std::vector<Event> legal_events(const RunningGame& rg);

/// Whether cooperative round-robin play can end with a winner.
/// Throws GameError(SemanticsError) for symbols games.
WinnableReport winnable(const GameDefinition& def, int players, const SearchBudget& budget);

/// Smallest n in [2, n_max] that is not winnable; the budget applies per count.
MinPlayersReport min_players_without_winner(const GameDefinition& def, int n_max,
                                            const SearchBudget& budget);

/// Definition features used to compare game types.
struct FeatureVector {
  int rows = 0;
  int cols = 0;
  std::string pattern_fingerprint;  // canonical pattern text, "" when absent
  std::optional<int> line_len;      // set when the pattern is a single Lines node
  std::set<LineFamily> line_families;
  Semantics semantics = Semantics::Ownership;
  TurnPolicy turn_policy = TurnPolicy::RoundRobin;
  int min_players = 0;
  int max_players = 0;
  int domain_size = 0;
};

FeatureVector features_of(const GameDefinition& def);

/// Relative weights of the six features, in order: board dims, pattern,
/// semantics, turn policy, player range, value-domain size.
struct DistanceWeights {
  double dims = 1.0;
  double pattern = 1.0;
  double semantics = 1.0;
  double turn_policy = 1.0;
  double players = 1.0;
  double domain = 1.0;
};

double ontology_distance(const GameDefinition& a, const GameDefinition& b,
                         const DistanceWeights& w = {});

bool same_type(const GameDefinition& a, const GameDefinition& b, double threshold,
               const DistanceWeights& w = {});

}  // namespace games
