#include "crq/constituents.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace crq {

namespace {

// T < F < V, matching the usual tabulation order of constituents.
int rank(TrivalentValue v) {
  switch (v) {
    case TrivalentValue::True:
      return 0;
    case TrivalentValue::False:
      return 1;
    case TrivalentValue::Void:
      return 2;
  }
  return 2;
}

}  // namespace

std::string Constituent::pattern_string() const {
  std::string s;
  for (TrivalentValue v : pattern) {
    s += v == TrivalentValue::True ? 'T' : (v == TrivalentValue::False ? 'F' : 'V');
  }
  return s;
}

std::vector<Constituent> constituents(std::span<const ConditionalEvent> family) {
  if (family.empty()) throw std::invalid_argument("constituents of an empty family");
  for (const auto& c : family) {
    if (!(*c.universe() == *family[0].universe())) {
      throw DomainError("constituents of a family over mixed universes");
    }
  }
  const std::size_t worlds = family[0].universe()->world_count();

  std::map<std::vector<int>, Constituent> groups;
  std::vector<int> key(family.size());
  for (World w = 0; w < worlds; ++w) {
    std::vector<TrivalentValue> pattern(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      pattern[i] = family[i].eval(w);
      key[i] = rank(pattern[i]);
    }
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) it->second.pattern = std::move(pattern);
    it->second.worlds.push_back(w);
  }

  std::vector<Constituent> out;
  out.reserve(groups.size());
  for (auto& [unused, c] : groups) out.push_back(std::move(c));
  return out;
}

}  // namespace crq
