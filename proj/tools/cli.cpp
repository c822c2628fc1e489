#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "games/analyzer.hpp"
#include "games/codec.hpp"
#include "games/dsl.hpp"
#include "games/error.hpp"
#include "games/rule_engine.hpp"
#include "games/server.hpp"

namespace games::cli {
namespace {

struct Loaded {
  std::optional<GameDefinition> def;
  int exit_code = kOk;
};

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

json diagnostics_json(const Diagnostics& diags) {
  json out = json::array();
  for (const auto& d : diags) {
    out.push_back({{"code", std::string(to_string(d.code))},
                   {"location", d.location},
                   {"message", d.message}});
  }
  return out;
}

void print_diagnostics(const Diagnostics& diags, std::ostream& os) {
  for (const auto& d : diags) {
    os << to_string(d.code) << " " << (d.location.empty() ? "/" : d.location) << " " << d.message
       << "\n";
  }
}

Loaded load_definition(const std::string& path, std::ostream& err) {
  auto text = slurp(path);
  if (!text) {
    err << "cannot read " << path << "\n";
    return {std::nullopt, kIo};
  }
  auto parsed = parse_game_definition(*text);
  if (!parsed.ok()) {
    print_diagnostics(parsed.diagnostics, err);
    return {std::nullopt, kValidation};
  }
  return {std::move(parsed.definition), kOk};
}

// --- validate ---------------------------------------------------------------

int cmd_validate(const std::string& file, bool as_json, std::ostream& out, std::ostream& err) {
  auto text = slurp(file);
  if (!text) {
    err << "cannot read " << file << "\n";
    return kIo;
  }
  auto parsed = parse_game_definition(*text);
  if (as_json) {
    out << diagnostics_json(parsed.diagnostics).dump(2) << "\n";
  } else {
    print_diagnostics(parsed.diagnostics, out);
  }
  return parsed.ok() ? kOk : kValidation;
}

// --- play -------------------------------------------------------------------

struct ScriptMove {
  int player = 0;
  Coord coord;
  std::optional<CellValue> value;
};

std::optional<std::vector<ScriptMove>> read_script(const std::string& path, std::ostream& err) {
  auto text = slurp(path);
  if (!text) {
    err << "cannot read " << path << "\n";
    return std::nullopt;
  }
  try {
    auto j = json::parse(*text);
    if (!j.is_array()) throw std::runtime_error("script must be a JSON list");
    std::vector<ScriptMove> moves;
    for (const auto& m : j) {
      for (const auto& [key, value] : m.items()) {
        if (key != "player" && key != "row" && key != "col" && key != "value") {
          throw std::runtime_error("unknown script field '" + key + "'");
        }
      }
      ScriptMove move{m.at("player").get<int>(), {m.at("row").get<int>(), m.at("col").get<int>()},
                      std::nullopt};
      if (m.contains("value") && !m["value"].is_null()) move.value = m["value"].get<int>();
      if (move.player < 1) throw std::runtime_error("script player ids start at 1");
      moves.push_back(move);
    }
    return moves;
  } catch (const std::exception& e) {
    err << "bad script " << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
  return s.empty() ? "(none)" : s;
}

int cmd_play(const std::string& file, const std::string& script_path, std::uint64_t seed,
             bool as_json, std::ostream& out, std::ostream& err) {
  auto loaded = load_definition(file, err);
  if (!loaded.def) return loaded.exit_code;
  auto script = read_script(script_path, err);
  if (!script) return kIo;
  const auto& def = *loaded.def;

  std::ostringstream text;
  json report{{"definition", def.name}, {"seed", seed}, {"moves", json::array()}};
  auto finish = [&](const RunningGame& rg, int code, const std::string& rejection) {
    report["state"] = std::string(to_string(rg.state));
    report["outcome"] = rg.outcome ? to_json(*rg.outcome) : json(nullptr);
    report["board"] = rg.board.grid();
    report["exit"] = code;
    if (!rejection.empty()) {
      report["rejected"] = rejection;
      err << "rejected: " << rejection << "\n";
    } else if (rg.outcome) {
      text << describe(*rg.outcome) << "\n";
    } else {
      text << "state: " << to_string(rg.state) << "\n";
    }
    if (as_json) {
      out << report.dump(2) << "\n";
    } else {
      out << text.str();
    }
    return code;
  };

  int players = def.min_players;
  for (const auto& m : *script) players = std::max(players, m.player);

  auto rg = create_running_game(def, "cli", seed);
  text << "game: " << def.name << " " << def.rows << "x" << def.cols << " (seed " << seed << ")\n";
  try {
    for (int i = 1; i <= players; ++i) {
      rg = step(rg, Event::player_join("Player" + std::to_string(i), PlayerKind::Human)).game;
    }
  } catch (const GameError& e) {
    return finish(rg, kRejected, e.what());
  }
  report["players"] = players;
  text << "players: " << players << "\n";

  auto start = step(rg, Event::game_start(1));
  if (start.fired.empty()) return finish(rg, kRejected, explain_rejection(rg, Event::game_start(1)).reason);
  rg = std::move(start.game);
  report["start"] = start.fired;
  text << "start: " << join_names(start.fired) << "\n";

  int n = 0;
  for (const auto& m : *script) {
    ++n;
    auto ev = Event::tile_click(m.player, m.coord, m.value);
    json move{{"player", m.player}, {"row", m.coord.row}, {"col", m.coord.col}};
    if (m.value) move["value"] = *m.value;
    text << "move " << n << ": player " << m.player << " " << to_string(m.coord);
    if (m.value) text << " = " << *m.value;

    std::string rejection;
    if (!rg.board.in_bounds(m.coord)) {
      rejection = "tile " + to_string(m.coord) + " is off the board";
    } else {
      auto result = step(rg, ev);
      if (result.fired.empty()) {
        rejection = explain_rejection(rg, ev).reason;
      } else {
        rg = std::move(result.game);
        move["fired"] = result.fired;
        text << " -> " << join_names(result.fired) << "\n";
      }
    }
    if (!rejection.empty()) {
      move["rejected"] = rejection;
      report["moves"].push_back(move);
      text << " rejected: " << rejection << "\n";
      return finish(rg, kRejected, rejection);
    }
    report["moves"].push_back(move);
  }
  return finish(rg, kOk, "");
}

// --- analyze ----------------------------------------------------------------

int cmd_analyze(const std::string& file, std::optional<int> players, std::optional<int> n_max,
                std::uint64_t budget, bool as_json, std::ostream& out, std::ostream& err) {
  auto loaded = load_definition(file, err);
  if (!loaded.def) return loaded.exit_code;
  const auto& def = *loaded.def;
  if (def.semantics != Semantics::Ownership) {
    err << "analysis needs an ownership game; '" << def.name
        << "' is a symbols (completion) game and is always winnable by solving it\n";
    return kUnsupported;
  }
  const SearchBudget b{budget};
  try {
    if (players) {
      auto r = winnable(def, *players, b);
      if (as_json) {
        out << json{{"mode", "winnable"},
                    {"players", *players},
                    {"result", std::string(to_string(r.verdict))},
                    {"states_explored", r.states_explored},
                    {"budget", budget},
                    {"budget_exhausted", r.budget_exhausted}}
                   .dump(2)
            << "\n";
      } else {
        out << to_string(r.verdict) << "\n"
            << "states explored: " << r.states_explored << "\n"
            << "budget: " << budget << (r.budget_exhausted ? " (exhausted)" : "") << "\n";
      }
      return kOk;
    }
    auto r = min_players_without_winner(def, *n_max, b);
    json scan = json::array();
    for (const auto& [n, v] : r.scan) {
      scan.push_back({{"players", n}, {"result", std::string(to_string(v))}});
    }
    std::string answer = r.verdict == Verdict::Unknown ? "unknown"
                         : r.players                   ? std::to_string(*r.players)
                                                       : "none";
    if (as_json) {
      out << json{{"mode", "min-players"},
                  {"max", *n_max},
                  {"result", r.players ? json(*r.players) : json(nullptr)},
                  {"status", std::string(to_string(r.verdict))},
                  {"scan", std::move(scan)},
                  {"states_explored", r.states_explored},
                  {"budget", budget},
                  {"budget_exhausted", r.budget_exhausted}}
                 .dump(2)
          << "\n";
    } else {
      out << answer << "\n";
      for (const auto& [n, v] : r.scan) out << "  " << n << " players: " << to_string(v) << "\n";
      out << "states explored: " << r.states_explored << "\n"
          << "budget: " << budget << " per count" << (r.budget_exhausted ? " (exhausted)" : "")
          << "\n";
    }
    return kOk;
  } catch (const GameError& e) {
    err << e.what() << "\n";
    return kValidation;
  }
}

// --- distance ---------------------------------------------------------------

int cmd_distance(const std::string& a, const std::string& b, std::optional<double> threshold,
                 bool as_json, std::ostream& out, std::ostream& err) {
  auto da = load_definition(a, err);
  if (!da.def) return da.exit_code;
  auto db = load_definition(b, err);
  if (!db.def) return db.exit_code;
  const double d = ontology_distance(*da.def, *db.def);
  if (as_json) {
    json j{{"distance", d}};
    if (threshold) j["same_type"] = d <= *threshold;
    out << j.dump(2) << "\n";
  } else {
    out << std::fixed << std::setprecision(6) << d << "\n";
    if (threshold) out << "same type: " << (d <= *threshold ? "yes" : "no") << "\n";
  }
  return kOk;
}

// --- serve ------------------------------------------------------------------

std::atomic<bool> g_stop_requested{false};

extern "C" void on_stop_signal(int) { g_stop_requested = true; }

int cmd_serve(const std::string& config_path, std::ostream& out, std::ostream& err) {
  server::ServerConfig cfg;
  try {
    cfg = server::ServerConfig::load(config_path, [](const char* name) -> std::optional<std::string> {
      if (const char* v = std::getenv(name)) return std::string(v);
      return std::nullopt;
    });
  } catch (const std::exception& e) {
    err << "bad config: " << e.what() << "\n";
    return kIo;
  }

  std::unique_ptr<server::GameStore> store;
  try {
    store = std::make_unique<server::GameStore>(cfg.data_dir, cfg.editor_token);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kIo;
  }

  server::HttpServer http(*store);
  const int port = http.bind(cfg.host, cfg.port);
  if (port < 0) {
    err << "cannot listen on " << cfg.host << ":" << cfg.port << "\n";
    return kIo;
  }
  out << "listening on " << cfg.host << ":" << port << " (data " << cfg.data_dir.string() << ")"
      << std::endl;

  g_stop_requested = false;
  auto old_int = std::signal(SIGINT, on_stop_signal);
  auto old_term = std::signal(SIGTERM, on_stop_signal);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done) {
      if (g_stop_requested) {
        http.stop();
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });
  const bool clean = http.listen() || g_stop_requested;
  done = true;
  watcher.join();
  std::signal(SIGINT, old_int);
  std::signal(SIGTERM, old_term);
  out << "stopped" << std::endl;
  return clean ? kOk : kIo;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Board games as data: validate, play, analyze and serve game definitions", "games"};
  app.require_subcommand(1);

  std::string file, file_b, config, script;
  bool as_json = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  int players = 0;
  int n_max = 0;
  std::optional<double> threshold;

  auto* serve = app.add_subcommand("serve", "Run the game server");
  serve->add_option("--config", config, "Config file")->required();

  auto* validate = app.add_subcommand("validate", "Check a .game.json file");
  validate->add_option("file", file)->required();
  validate->add_flag("--json", as_json);

  auto* play = app.add_subcommand("play", "Play a scripted game headlessly");
  play->add_option("file", file)->required();
  play->add_option("--script", script, "JSON list of {player, row, col, value?}")->required();
  play->add_option("--seed", seed);
  play->add_flag("--json", as_json);

  auto* analyze = app.add_subcommand("analyze", "Exhaustive playability analysis");
  analyze->add_option("file", file)->required();
  analyze->add_option("--budget", budget, "Maximum distinct states per search");
  analyze->add_flag("--json", as_json);
  analyze->require_subcommand(1);
  auto* win = analyze->add_subcommand("winnable", "Can any play produce a winner?");
  win->add_option("--players", players)->required()->check(CLI::PositiveNumber);
  auto* minp = analyze->add_subcommand("min-players", "Smallest player count with no winner");
  minp->add_option("--max", n_max)->required()->check(CLI::Range(2, 1000));

  auto* distance = app.add_subcommand("distance", "Feature distance between two definitions");
  distance->add_option("file_a", file)->required();
  distance->add_option("file_b", file_b)->required();
  distance->add_option("--threshold", threshold);
  distance->add_flag("--json", as_json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (serve->parsed()) return cmd_serve(config, out, err);
  if (validate->parsed()) return cmd_validate(file, as_json, out, err);
  if (play->parsed()) return cmd_play(file, script, seed, as_json, out, err);
  if (analyze->parsed()) {
    if (win->parsed()) return cmd_analyze(file, players, std::nullopt, budget, as_json, out, err);
    return cmd_analyze(file, std::nullopt, n_max, budget, as_json, out, err);
  }
  return cmd_distance(file, file_b, threshold, as_json, out, err);
}

}  // namespace games::cli
