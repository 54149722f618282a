#pragma once

#include <span>
#include <string>
#include <vector>

#include "crq/conditional.hpp"

namespace crq {

/// One satisfiable true/false/void pattern over a family of conditional
/// events, together with the worlds realizing it. Marks use the usual
/// letters T, F, V.
struct Constituent {
  std::vector<TrivalentValue> pattern;
  std::vector<World> worlds;

  bool all_void() const {
    for (TrivalentValue v : pattern) {
      if (v != TrivalentValue::Void) return false;
    }
    return true;
  }

  std::string pattern_string() const;
};

/// All satisfiable patterns over the family, ordered lexicographically with
/// T < F < V per coordinate; the all-void constituent, when satisfiable,
/// therefore sorts last.
std::vector<Constituent> constituents(std::span<const ConditionalEvent> family);

}  // namespace crq
