// Writes the built-in definitions to <dir>/<name>.game.json in canonical form.
#include <fstream>
#include <iostream>

#include "games/builtin.hpp"
#include "games/dsl.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus DIR\n";
    return 2;
  }
  for (const auto& [name, def] : games::builtin_corpus()) {
    const std::string path = std::string(argv[1]) + "/" + name + ".game.json";
    std::ofstream out(path, std::ios::binary);
    out << games::serialize_definition(def);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 2;
    }
  }
  return 0;
}
