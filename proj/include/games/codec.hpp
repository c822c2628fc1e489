#pragma once

// JSON shapes shared by snapshots, the definition format, and the HTTP
// protocol. Objects use nlohmann::json's sorted keys, which is the
// canonical key order everywhere.

#include <nlohmann/json.hpp>

#include "games/definition.hpp"
#include "games/running_game.hpp"

namespace games {

using nlohmann::json;

json to_json(Coord c);
json to_json(const Pattern& p);
json to_json(const Condition& c);
json to_json(const Action& a);
json to_json(const Rule& r);
json to_json(const GameDefinition& def);
json to_json(const Board& b);
json to_json(const Player& p);
json to_json(const Outcome& o);
json to_json(const Event& e);
json to_json(const Command& c);
json to_json(const RunningGame& rg);
json to_json(const GameView& v);

// Decoders for the runtime shapes throw GameError(CorruptSnapshot) on any
// mismatch. Definitions go through the diagnostic-reporting reader in dsl.hpp.
Coord coord_from_json(const json& j);
Board board_from_json(const json& j);
Player player_from_json(const json& j);
Outcome outcome_from_json(const json& j);
Event event_from_json(const json& j);
Command command_from_json(const json& j);

/// 2-space indent, sorted keys, trailing newline.
std::string canonical_dump(const json& j);

}  // namespace games
