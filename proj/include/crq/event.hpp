#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace crq {

/// A possible world: one truth value per declared atom, packed as a bitmask
/// (bit i holds the value of atom i in declaration order).
using World = std::uint32_t;

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// The finite, ordered set of named atoms that events are built over.
/// Capped at kMaxAtoms: every semantic question is decided by exhaustive
/// world enumeration, which is exponential in the atom count.
class Universe {
 public:
  static constexpr std::size_t kMaxAtoms = 20;

  explicit Universe(std::vector<std::string> atoms);

  std::size_t size() const { return atoms_.size(); }
  std::size_t world_count() const { return std::size_t{1} << atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom_name(std::size_t index) const { return atoms_.at(index); }

  /// Index of a declared atom; throws DomainError for unknown names.
  std::size_t index_of(const std::string& name) const;

  bool operator==(const Universe& other) const { return atoms_ == other.atoms_; }

 private:
  std::vector<std::string> atoms_;
};

using UniversePtr = std::shared_ptr<const Universe>;

/// Set of worlds, one bit per world index.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t world_count, bool fill = false);

  std::size_t world_count() const { return count_; }
  bool test(World w) const { return (bits_[w >> 6] >> (w & 63)) & 1; }
  void set(World w) { bits_[w >> 6] |= std::uint64_t{1} << (w & 63); }

  bool none() const;
  bool all() const;
  std::size_t popcount() const;
  /// Lowest-index world in the set, or nullopt-like -1 when empty.
  long first() const;

  WorldSet operator&(const WorldSet& other) const;
  WorldSet operator|(const WorldSet& other) const;
  WorldSet operator~() const;
  bool operator==(const WorldSet& other) const = default;

  /// True when this set is contained in `other`.
  bool subset_of(const WorldSet& other) const;

 private:
  std::size_t count_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// A propositional event: a formula tree over the universe's atoms with
/// connectives and/or/not and the constants T and F. The satisfying-world
/// set is computed at construction, so all semantic queries are O(worlds/64)
/// bit operations afterwards.
class Event {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  static Event top(UniversePtr universe);
  static Event bottom(UniversePtr universe);
  static Event atom(UniversePtr universe, const std::string& name);

  Event operator&&(const Event& other) const;
  Event operator||(const Event& other) const;
  Event operator!() const;

  bool evaluate(World w) const;
  const WorldSet& worlds() const { return worlds_; }
  const UniversePtr& universe() const { return universe_; }

  bool is_satisfiable() const { return !worlds_.none(); }
  bool is_tautology() const { return worlds_.all(); }

  /// Canonical textual rendering with ~, &, |, T, F.
  std::string to_string() const;

  bool equivalent(const Event& other) const;

 private:
  struct Node {
    Kind kind;
    std::size_t atom = 0;
    std::shared_ptr<const Node> left, right;
  };

  Event(UniversePtr universe, std::shared_ptr<const Node> node, WorldSet worlds);
  static void check_same_universe(const Event& a, const Event& b);
  static std::string render(const Node& node, const Universe& universe, int parent_prec);

  UniversePtr universe_;
  std::shared_ptr<const Node> node_;
  WorldSet worlds_;
};

/// A logically implies B: A & ~B is unsatisfiable over all worlds.
bool implies(const Event& a, const Event& b);

}  // namespace crq
