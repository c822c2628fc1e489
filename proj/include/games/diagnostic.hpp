#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace games {

enum class DiagCode {
  E_PARSE,
  E_UNKNOWN_CONDITION,
  E_UNKNOWN_ACTION,
  E_UNKNOWN_RULE,
  E_CYCLE,
  E_OUT_OF_BOUNDS,
  E_PLAYER_BOUNDS,
  E_SEMANTICS,
  E_REGION_TILING,
};

std::string_view to_string(DiagCode code);

struct Diagnostic {
  DiagCode code = DiagCode::E_PARSE;
  std::string message;
  std::string location;  // JSON pointer into the document, may be empty

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace games
