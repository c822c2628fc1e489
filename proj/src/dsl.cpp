#include "games/dsl.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <set>

#include "games/codec.hpp"
#include "games/rule_engine.hpp"

namespace games {
namespace {

std::string join_path(const std::string& base, std::string_view key) {
  return base + "/" + std::string(key);
}

std::string join_path(const std::string& base, std::size_t i) {
  return base + "/" + std::to_string(i);
}

// Walks a document, collecting every structural problem instead of stopping
// at the first one.
class Reader {
 public:
  Diagnostics diags;

  void error(DiagCode code, std::string message, std::string path) {
    diags.push_back({code, std::move(message), std::move(path)});
  }

  bool expect_object(const json& j, const std::string& path,
                     std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional = {}) {
    if (!j.is_object()) {
      error(DiagCode::E_PARSE, "expected an object", path);
      return false;
    }
    bool ok = true;
    for (auto key : required) {
      if (!j.contains(std::string(key))) {
        error(DiagCode::E_PARSE, "missing field '" + std::string(key) + "'", path);
        ok = false;
      }
    }
    for (const auto& [key, value] : j.items()) {
      const bool known =
          std::find(required.begin(), required.end(), key) != required.end() ||
          std::find(optional.begin(), optional.end(), key) != optional.end();
      if (!known) {
        error(DiagCode::E_PARSE, "unknown field '" + key + "'", join_path(path, key));
        ok = false;
      }
    }
    return ok;
  }

  std::optional<int> integer(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_number_integer()) {
      error(DiagCode::E_PARSE, "expected an integer", join_path(path, key));
      return std::nullopt;
    }
    const auto v = it->get<std::int64_t>();
    if (v < -1'000'000 || v > 1'000'000) {
      error(DiagCode::E_PARSE, "integer out of range", join_path(path, key));
      return std::nullopt;
    }
    return static_cast<int>(v);
  }

  std::optional<std::string> text(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_string()) {
      error(DiagCode::E_PARSE, "expected a string", join_path(path, key));
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  template <typename E, typename Fn>
  std::optional<E> enumerated(const json& obj, const char* key, const std::string& path, Fn from,
                              DiagCode code = DiagCode::E_PARSE) {
    auto s = text(obj, key, path);
    if (!s) return std::nullopt;
    auto v = from(*s);
    if (!v) error(code, "unknown " + std::string(key) + " '" + *s + "'", join_path(path, key));
    return v;
  }

  std::optional<Coord> coord(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer()) {
      error(DiagCode::E_PARSE, "coordinate must be [row, col]", path);
      return std::nullopt;
    }
    return Coord{j[0].get<int>(), j[1].get<int>()};
  }

  std::optional<Pattern> pattern(const json& j, const std::string& path) {
    if (!j.is_object() || j.size() != 1) {
      error(DiagCode::E_PARSE, "pattern must be one of {tiles}, {lines}, {composite}", path);
      return std::nullopt;
    }
    const auto& [key, body] = *j.items().begin();
    const auto here = join_path(path, key);
    if (key == "tiles") {
      if (!body.is_array()) {
        error(DiagCode::E_PARSE, "tiles must be a list of coordinate lists", here);
        return std::nullopt;
      }
      TilesPattern tiles;
      bool ok = true;
      for (std::size_t i = 0; i < body.size(); ++i) {
        const auto& list = body[i];
        if (!list.is_array()) {
          error(DiagCode::E_PARSE, "expected a coordinate list", join_path(here, i));
          ok = false;
          continue;
        }
        auto& out = tiles.lists.emplace_back();
        for (std::size_t k = 0; k < list.size(); ++k) {
          if (auto c = coord(list[k], join_path(join_path(here, i), k))) {
            out.push_back(*c);
          } else {
            ok = false;
          }
        }
      }
      if (!ok) return std::nullopt;
      return Pattern{std::move(tiles)};
    }
    if (key == "lines") {
      if (!expect_object(body, here, {"len", "families"})) return std::nullopt;
      auto len = integer(body, "len", here);
      const auto& fams = body["families"];
      if (!fams.is_array()) {
        error(DiagCode::E_PARSE, "families must be a list", join_path(here, "families"));
        return std::nullopt;
      }
      std::set<LineFamily> families;
      bool ok = len.has_value();
      for (std::size_t i = 0; i < fams.size(); ++i) {
        const auto fpath = join_path(join_path(here, "families"), i);
        auto f = fams[i].is_string() ? line_family_from(fams[i].get<std::string>())
                                     : std::nullopt;
        if (!f) {
          error(DiagCode::E_PARSE, "unknown line family", fpath);
          ok = false;
        } else if (!families.insert(*f).second) {
          error(DiagCode::E_PARSE, "duplicate line family", fpath);
          ok = false;
        }
      }
      if (!ok) return std::nullopt;
      return Pattern::lines(*len, std::move(families));
    }
    if (key == "composite") {
      if (!body.is_array()) {
        error(DiagCode::E_PARSE, "composite must be a list of patterns", here);
        return std::nullopt;
      }
      std::vector<Pattern> parts;
      bool ok = true;
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (auto p = pattern(body[i], join_path(here, i))) {
          parts.push_back(std::move(*p));
        } else {
          ok = false;
        }
      }
      if (!ok) return std::nullopt;
      return Pattern::composite(std::move(parts));
    }
    error(DiagCode::E_PARSE, "unknown pattern kind '" + key + "'", here);
    return std::nullopt;
  }

  std::optional<Condition> condition(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind")) {
      error(DiagCode::E_PARSE, "condition must be an object with a 'kind'", path);
      return std::nullopt;
    }
    auto kind = enumerated<ConditionKind>(j, "kind", path, condition_kind_from,
                                          DiagCode::E_UNKNOWN_CONDITION);
    if (!kind) return std::nullopt;
    Condition c = Condition::simple(*kind);
    switch (*kind) {
      case ConditionKind::GameTypeIs: {
        if (!expect_object(j, path, {"kind", "name"})) return std::nullopt;
        auto name = text(j, "name", path);
        if (!name) return std::nullopt;
        c.name = *name;
        break;
      }
      case ConditionKind::StateIs: {
        if (!expect_object(j, path, {"kind", "state"})) return std::nullopt;
        auto s = enumerated<LifecycleState>(j, "state", path, lifecycle_from);
        if (!s) return std::nullopt;
        c.state = *s;
        break;
      }
      case ConditionKind::PatternOwnedBySamePlayer:
        if (!expect_object(j, path, {"kind"}, {"pattern"})) return std::nullopt;
        if (j.contains("pattern")) {
          c.pattern = pattern(j["pattern"], join_path(path, "pattern"));
          if (!c.pattern) return std::nullopt;
        }
        break;
      case ConditionKind::GroupsAllDistinct: {
        if (!expect_object(j, path, {"kind", "groups"})) return std::nullopt;
        const auto& groups = j["groups"];
        if (!groups.is_array()) {
          error(DiagCode::E_PARSE, "groups must be a list", join_path(path, "groups"));
          return std::nullopt;
        }
        for (std::size_t i = 0; i < groups.size(); ++i) {
          auto g = groups[i].is_string() ? group_family_from(groups[i].get<std::string>())
                                         : std::nullopt;
          if (!g) {
            error(DiagCode::E_PARSE, "unknown group family",
                  join_path(join_path(path, "groups"), i));
            return std::nullopt;
          }
          c.groups.push_back(*g);
        }
        break;
      }
      default:
        if (!expect_object(j, path, {"kind"})) return std::nullopt;
        break;
    }
    return c;
  }

  std::optional<Action> action(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind")) {
      error(DiagCode::E_PARSE, "action must be an object with a 'kind'", path);
      return std::nullopt;
    }
    auto kind =
        enumerated<ActionKind>(j, "kind", path, action_kind_from, DiagCode::E_UNKNOWN_ACTION);
    if (!kind) return std::nullopt;
    if (*kind == ActionKind::SendMessage) {
      if (!expect_object(j, path, {"kind", "text"})) return std::nullopt;
      auto t = text(j, "text", path);
      if (!t) return std::nullopt;
      return Action::message(*t);
    }
    if (!expect_object(j, path, {"kind"})) return std::nullopt;
    return Action::simple(*kind);
  }

  std::optional<Rule> rule(const json& j, const std::string& path) {
    if (!expect_object(j, path, {"name", "on", "conditions", "actions", "components"})) {
      return std::nullopt;
    }
    Rule r;
    bool ok = true;
    if (auto name = text(j, "name", path)) r.name = *name; else ok = false;
    if (auto on = enumerated<Trigger>(j, "on", path, trigger_from)) r.on = *on; else ok = false;

    auto list = [&](const char* key, auto&& each) {
      const auto& arr = j[key];
      const auto here = join_path(path, key);
      if (!arr.is_array()) {
        error(DiagCode::E_PARSE, "expected a list", here);
        ok = false;
        return;
      }
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!each(arr[i], join_path(here, i))) ok = false;
      }
    };
    list("conditions", [&](const json& e, const std::string& p) {
      auto c = condition(e, p);
      if (c) r.conditions.push_back(std::move(*c));
      return c.has_value();
    });
    list("actions", [&](const json& e, const std::string& p) {
      auto a = action(e, p);
      if (a) r.actions.push_back(std::move(*a));
      return a.has_value();
    });
    list("components", [&](const json& e, const std::string& p) {
      if (!e.is_string()) {
        error(DiagCode::E_PARSE, "component must be a rule name", p);
        return false;
      }
      r.components.push_back(e.get<std::string>());
      return true;
    });
    if (!ok) return std::nullopt;
    return r;
  }

  std::optional<GameDefinition> definition(const json& doc) {
    const std::string root;
    if (!expect_object(doc, root,
                       {"name", "rows", "cols", "semantics", "value_domain", "min_players",
                        "max_players", "turn_policy", "rules"},
                       {"win_pattern", "givens", "region"})) {
      return std::nullopt;
    }
    GameDefinition def;
    bool ok = true;
    auto take = [&](auto opt, auto& into) {
      if (opt) into = *opt; else ok = false;
    };
    take(text(doc, "name", root), def.name);
    take(integer(doc, "rows", root), def.rows);
    take(integer(doc, "cols", root), def.cols);
    take(enumerated<Semantics>(doc, "semantics", root, semantics_from), def.semantics);
    take(integer(doc, "min_players", root), def.min_players);
    take(integer(doc, "max_players", root), def.max_players);
    take(enumerated<TurnPolicy>(doc, "turn_policy", root, turn_policy_from), def.turn_policy);

    const auto& vd = doc["value_domain"];
    if (expect_object(vd, "/value_domain", {"lo", "hi"})) {
      take(integer(vd, "lo", "/value_domain"), def.value_domain.lo);
      take(integer(vd, "hi", "/value_domain"), def.value_domain.hi);
    } else {
      ok = false;
    }

    if (doc.contains("win_pattern")) {
      def.win_pattern = pattern(doc["win_pattern"], "/win_pattern");
      if (!def.win_pattern) ok = false;
    }

    if (doc.contains("givens")) {
      const auto& g = doc["givens"];
      bool shape_ok = g.is_array();
      std::vector<std::vector<CellValue>> grid;
      for (std::size_t r = 0; shape_ok && r < g.size(); ++r) {
        if (!g[r].is_array()) {
          shape_ok = false;
          break;
        }
        auto& row = grid.emplace_back();
        for (const auto& v : g[r]) {
          if (!v.is_number_integer()) {
            shape_ok = false;
            break;
          }
          row.push_back(v.get<int>());
        }
      }
      if (shape_ok) {
        def.givens = std::move(grid);
      } else {
        error(DiagCode::E_PARSE, "givens must be a grid of integers", "/givens");
        ok = false;
      }
    }

    if (doc.contains("region")) {
      const auto& rg = doc["region"];
      if (expect_object(rg, "/region", {"rows", "cols"})) {
        RegionShape shape;
        take(integer(rg, "rows", "/region"), shape.rows);
        take(integer(rg, "cols", "/region"), shape.cols);
        def.region = shape;
      } else {
        ok = false;
      }
    }

    const auto& rules = doc["rules"];
    if (!rules.is_array()) {
      error(DiagCode::E_PARSE, "rules must be a list", "/rules");
      ok = false;
    } else {
      for (std::size_t i = 0; i < rules.size(); ++i) {
        if (auto r = rule(rules[i], join_path(std::string("/rules"), i))) {
          def.rules.push_back(std::move(*r));
        } else {
          ok = false;
        }
      }
    }
    if (!ok || !diags.empty()) return std::nullopt;
    return def;
  }
};

// --- validation ------------------------------------------------------------

void check_pattern(const Pattern& p, int rows, int cols, const std::string& path,
                   Diagnostics& out) {
  if (const auto* tiles = std::get_if<TilesPattern>(&p.node)) {
    for (std::size_t i = 0; i < tiles->lists.size(); ++i) {
      const auto& list = tiles->lists[i];
      const auto lpath = path + "/tiles/" + std::to_string(i);
      if (list.empty()) out.push_back({DiagCode::E_SEMANTICS, "empty tile list", lpath});
      for (std::size_t k = 0; k < list.size(); ++k) {
        const auto c = list[k];
        if (c.row < 0 || c.col < 0 || c.row >= rows || c.col >= cols) {
          out.push_back({DiagCode::E_OUT_OF_BOUNDS,
                         "tile " + to_string(c) + " is outside the " + std::to_string(rows) +
                             "x" + std::to_string(cols) + " board",
                         lpath + "/" + std::to_string(k)});
        }
      }
    }
  } else if (const auto* lines = std::get_if<LinesPattern>(&p.node)) {
    if (lines->length < 1) {
      out.push_back({DiagCode::E_OUT_OF_BOUNDS, "line length must be at least 1",
                     path + "/lines/len"});
    }
  } else {
    const auto& parts = std::get<CompositePattern>(p.node).parts;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      check_pattern(parts[i], rows, cols, path + "/composite/" + std::to_string(i), out);
    }
  }
}

bool uses_tile(const Rule& r) {
  for (const auto& c : r.conditions) {
    if (is_tile_relative(c.kind)) return true;
  }
  for (const auto& a : r.actions) {
    if (a.kind == ActionKind::SetTileToCurrentPlayer || a.kind == ActionKind::SetTileToEventValue) {
      return true;
    }
  }
  return false;
}

void check_rules(const GameDefinition& def, Diagnostics& out) {
  const bool ownership = def.semantics == Semantics::Ownership;
  std::map<std::string, std::size_t> first_index;
  for (std::size_t i = 0; i < def.rules.size(); ++i) {
    const auto& r = def.rules[i];
    const auto rpath = "/rules/" + std::to_string(i);
    if (!first_index.emplace(r.name, i).second) {
      out.push_back({DiagCode::E_UNKNOWN_RULE, "duplicate rule name '" + r.name + "'",
                     rpath + "/name"});
    }
    for (std::size_t k = 0; k < r.conditions.size(); ++k) {
      const auto& c = r.conditions[k];
      const auto cpath = rpath + "/conditions/" + std::to_string(k);
      switch (c.kind) {
        case ConditionKind::PatternOwnedBySamePlayer:
          if (!ownership) {
            out.push_back({DiagCode::E_SEMANTICS, "pattern ownership needs ownership semantics",
                           cpath});
          } else if (c.pattern) {
            if (def.rows >= 1 && def.cols >= 1) {
              check_pattern(*c.pattern, def.rows, def.cols, cpath + "/pattern", out);
            }
          } else if (!def.win_pattern) {
            out.push_back({DiagCode::E_SEMANTICS,
                           "condition relies on the win pattern, which is absent", cpath});
          }
          break;
        case ConditionKind::LegalSymbolPlacement:
          if (ownership) {
            out.push_back({DiagCode::E_SEMANTICS, "symbol placement needs symbols semantics",
                           cpath});
          }
          break;
        case ConditionKind::GroupsAllDistinct:
          for (auto g : c.groups) {
            if (g == GroupFamily::Regions && !def.region) {
              out.push_back({DiagCode::E_SEMANTICS, "region groups need a region shape",
                             cpath + "/groups"});
            }
          }
          break;
        default:
          break;
      }
    }
    for (std::size_t k = 0; k < r.actions.size(); ++k) {
      const auto kind = r.actions[k].kind;
      const auto apath = rpath + "/actions/" + std::to_string(k);
      if (kind == ActionKind::SetTileToCurrentPlayer && !ownership) {
        out.push_back({DiagCode::E_SEMANTICS, "SetTileToCurrentPlayer needs ownership semantics",
                       apath});
      }
      if (kind == ActionKind::SetTileToEventValue && ownership) {
        out.push_back({DiagCode::E_SEMANTICS, "SetTileToEventValue needs symbols semantics",
                       apath});
      }
      if (kind == ActionKind::SetWinnerMatched && !ownership) {
        out.push_back({DiagCode::E_SEMANTICS, "SetWinnerMatched needs ownership semantics",
                       apath});
      }
    }
  }

  auto graph = validate_rule_graph(def.rules);
  out.insert(out.end(), graph.begin(), graph.end());

  // A rule that reads the event tile must only be reachable from TileClick.
  std::map<std::string, std::set<Trigger>> reached;
  for (const auto& r : def.rules) {
    if (r.on == Trigger::Component) continue;
    std::vector<const Rule*> work{&r};
    std::set<const Rule*> seen;
    while (!work.empty()) {
      const Rule* cur = work.back();
      work.pop_back();
      if (!seen.insert(cur).second) continue;
      reached[cur->name].insert(r.on);
      for (const auto& name : cur->components) {
        if (const Rule* next = def.find_rule(name)) work.push_back(next);
      }
    }
  }
  for (std::size_t i = 0; i < def.rules.size(); ++i) {
    const auto& r = def.rules[i];
    if (!uses_tile(r)) continue;
    for (auto t : reached[r.name]) {
      if (t != Trigger::TileClick) {
        out.push_back({DiagCode::E_SEMANTICS,
                       "rule '" + r.name + "' reads the event tile but runs on " +
                           std::string(to_string(t)) + " events",
                       "/rules/" + std::to_string(i)});
        break;
      }
    }
  }
}

}  // namespace

ParseResult definition_from_json(const nlohmann::json& doc) {
  Reader reader;
  auto def = reader.definition(doc);
  if (!def) {
    if (reader.diags.empty()) reader.error(DiagCode::E_PARSE, "unreadable definition", "");
    return {std::nullopt, std::move(reader.diags)};
  }
  auto diags = validate_definition(*def);
  if (!diags.empty()) return {std::nullopt, std::move(diags)};
  return {std::move(def), {}};
}

ParseResult parse_game_definition(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    return {std::nullopt,
            {{DiagCode::E_PARSE, e.what(), "byte " + std::to_string(e.byte)}}};
  }
  return definition_from_json(doc);
}

Diagnostics validate_definition(const GameDefinition& def) {
  Diagnostics out;
  const bool dims_ok = def.rows >= 1 && def.cols >= 1;
  if (def.rows < 1) out.push_back({DiagCode::E_OUT_OF_BOUNDS, "rows must be >= 1", "/rows"});
  if (def.cols < 1) out.push_back({DiagCode::E_OUT_OF_BOUNDS, "cols must be >= 1", "/cols"});

  if (def.min_players < 1 || def.min_players > def.max_players) {
    out.push_back({DiagCode::E_PLAYER_BOUNDS,
                   "player bounds must satisfy 1 <= min_players <= max_players",
                   "/min_players"});
  }
  const auto& vd = def.value_domain;
  if (vd.lo < 1 || vd.hi < vd.lo) {
    out.push_back({DiagCode::E_SEMANTICS, "value domain must satisfy 1 <= lo <= hi",
                   "/value_domain"});
  }

  if (def.semantics == Semantics::Ownership) {
    if (vd.lo != 1 || vd.hi != def.max_players) {
      out.push_back({DiagCode::E_PLAYER_BOUNDS,
                     "ownership games need value domain [1, max_players]", "/value_domain"});
    }
    if (!def.win_pattern) {
      out.push_back({DiagCode::E_SEMANTICS, "ownership games need a win pattern", ""});
    }
    if (def.givens) {
      out.push_back({DiagCode::E_SEMANTICS, "givens are for symbols games", "/givens"});
    }
    if (def.region) {
      out.push_back({DiagCode::E_SEMANTICS, "regions are for symbols games", "/region"});
    }
  } else if (def.win_pattern) {
    out.push_back({DiagCode::E_SEMANTICS, "symbols games have no win pattern", "/win_pattern"});
  }

  if (def.win_pattern && dims_ok) {
    check_pattern(*def.win_pattern, def.rows, def.cols, "/win_pattern", out);
  }

  if (def.givens && dims_ok) {
    const auto& g = *def.givens;
    bool shape_ok = static_cast<int>(g.size()) == def.rows;
    for (const auto& row : g) shape_ok = shape_ok && static_cast<int>(row.size()) == def.cols;
    if (!shape_ok) {
      out.push_back({DiagCode::E_OUT_OF_BOUNDS, "givens grid must match the board dimensions",
                     "/givens"});
    } else {
      for (std::size_t r = 0; r < g.size(); ++r) {
        for (std::size_t c = 0; c < g[r].size(); ++c) {
          const auto v = g[r][c];
          if (v != 0 && !vd.contains(v)) {
            out.push_back({DiagCode::E_SEMANTICS, "given outside the value domain",
                           "/givens/" + std::to_string(r) + "/" + std::to_string(c)});
          }
        }
      }
    }
  }

  if (def.region) {
    const auto& reg = *def.region;
    const bool positive = reg.rows >= 1 && reg.cols >= 1;
    const bool covers_domain = reg.rows * reg.cols == vd.size();
    const bool tiles = positive && dims_ok && def.rows % reg.rows == 0 && def.cols % reg.cols == 0;
    if (!positive || !covers_domain || !tiles) {
      out.push_back({DiagCode::E_REGION_TILING,
                     "region " + std::to_string(reg.rows) + "x" + std::to_string(reg.cols) +
                         " must hold exactly " + std::to_string(vd.size()) +
                         " cells and tile the " + std::to_string(def.rows) + "x" +
                         std::to_string(def.cols) + " board",
                     "/region"});
    }
  }

  check_rules(def, out);
  return out;
}

std::string serialize_definition(const GameDefinition& def) {
  return canonical_dump(to_json(def));
}

}  // namespace games
