#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "games/definition.hpp"
#include "games/diagnostic.hpp"

namespace games {

struct ParseResult {
  std::optional<GameDefinition> definition;  // set iff diagnostics is empty
  Diagnostics diagnostics;

  bool ok() const noexcept { return definition.has_value(); }
};

/// Parses a `.game.json` document. Unknown fields are errors. Structural
/// problems are reported first; a structurally sound document is then
/// validated and any validation diagnostics returned.
ParseResult parse_game_definition(std::string_view text);

/// Same as parse_game_definition for an already-parsed document.
ParseResult definition_from_json(const nlohmann::json& doc);

/// Empty iff all model and rule-graph invariants hold.
Diagnostics validate_definition(const GameDefinition& def);

/// Canonical text: sorted keys, 2-space indent, arrays in authored order.
std::string serialize_definition(const GameDefinition& def);

}  // namespace games
