#pragma once

#include <cstdlib>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace mixedfree {

// Size limits for the exact (exponential-time) oracles.
struct Caps {
  int clique_n = 64;
  int chromatic_n = 24;
  int minor_n = 30;          // unconstrained minor search: matrix side
  int minor_d = 4;           // unconstrained minor search: minor order
  int minor_blocks = 20;     // coarsening-constrained search: block count
  int twinwidth_n = 9;

  // Parses "clique=64,chromatic=24,..." overrides on top of *this.
  Caps with_overrides(const std::string& spec) const {
    Caps out = *this;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("bad caps entry '" + item + "'");
      auto key = item.substr(0, eq);
      int value = 0;
      try {
        value = std::stoi(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw InputError("bad caps value in '" + item + "'");
      }
      if (key == "clique") out.clique_n = value;
      else if (key == "chromatic") out.chromatic_n = value;
      else if (key == "minor_n") out.minor_n = value;
      else if (key == "minor_d") out.minor_d = value;
      else if (key == "minor_blocks") out.minor_blocks = value;
      else if (key == "tww") out.twinwidth_n = value;
      else throw InputError("unknown caps key '" + key + "'");
    }
    return out;
  }

  // Defaults overridden by the MIXEDFREE_CAPS environment variable, if set.
  static Caps from_env() {
    const char* env = std::getenv("MIXEDFREE_CAPS");
    return env ? Caps{}.with_overrides(env) : Caps{};
  }
};

}  // namespace mixedfree
