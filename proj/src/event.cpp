#include "crq/event.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace crq {

Universe::Universe(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.size() > kMaxAtoms) {
    throw DomainError("universe of " + std::to_string(atoms_.size()) +
                      " atoms exceeds the cap of " + std::to_string(kMaxAtoms) +
                      " (world enumeration would be too large)");
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].empty()) throw DomainError("empty atom name");
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      if (atoms_[i] == atoms_[j]) throw DomainError("duplicate atom '" + atoms_[i] + "'");
    }
  }
}

std::size_t Universe::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == name) return i;
  }
  throw DomainError("unknown atom '" + name + "'");
}

WorldSet::WorldSet(std::size_t world_count, bool fill)
    : count_(world_count), bits_((world_count + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
  if (fill && count_ % 64 != 0) {
    bits_.back() &= (std::uint64_t{1} << (count_ % 64)) - 1;
  }
}

bool WorldSet::none() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

bool WorldSet::all() const {
  return popcount() == count_;
}

std::size_t WorldSet::popcount() const {
  std::size_t n = 0;
  for (std::uint64_t w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

long WorldSet::first() const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] != 0) {
      return static_cast<long>(i * 64 + static_cast<std::size_t>(std::countr_zero(bits_[i])));
    }
  }
  return -1;
}

WorldSet WorldSet::operator&(const WorldSet& other) const {
  WorldSet out(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] & other.bits_[i];
  return out;
}

WorldSet WorldSet::operator|(const WorldSet& other) const {
  WorldSet out(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] | other.bits_[i];
  return out;
}

WorldSet WorldSet::operator~() const {
  WorldSet out(count_, true);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= ~bits_[i];
  return out;
}

bool WorldSet::subset_of(const WorldSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

Event::Event(UniversePtr universe, std::shared_ptr<const Node> node, WorldSet worlds)
    : universe_(std::move(universe)), node_(std::move(node)), worlds_(std::move(worlds)) {}

Event Event::top(UniversePtr universe) {
  WorldSet worlds(universe->world_count(), true);
  return Event(std::move(universe), std::make_shared<Node>(Node{Kind::True}), std::move(worlds));
}

Event Event::bottom(UniversePtr universe) {
  WorldSet worlds(universe->world_count(), false);
  return Event(std::move(universe), std::make_shared<Node>(Node{Kind::False}), std::move(worlds));
}

Event Event::atom(UniversePtr universe, const std::string& name) {
  const std::size_t index = universe->index_of(name);
  WorldSet worlds(universe->world_count());
  for (World w = 0; w < universe->world_count(); ++w) {
    if ((w >> index) & 1) worlds.set(w);
  }
  return Event(std::move(universe), std::make_shared<Node>(Node{Kind::Atom, index, nullptr, nullptr}),
               std::move(worlds));
}

void Event::check_same_universe(const Event& a, const Event& b) {
  if (a.universe_ != b.universe_ && !(*a.universe_ == *b.universe_)) {
    throw DomainError("events over different atom sets");
  }
}

Event Event::operator&&(const Event& other) const {
  check_same_universe(*this, other);
  auto node = std::make_shared<Node>(Node{Kind::And, 0, node_, other.node_});
  return Event(universe_, std::move(node), worlds_ & other.worlds_);
}

Event Event::operator||(const Event& other) const {
  check_same_universe(*this, other);
  auto node = std::make_shared<Node>(Node{Kind::Or, 0, node_, other.node_});
  return Event(universe_, std::move(node), worlds_ | other.worlds_);
}

Event Event::operator!() const {
  auto node = std::make_shared<Node>(Node{Kind::Not, 0, node_, nullptr});
  return Event(universe_, std::move(node), ~worlds_);
}

bool Event::evaluate(World w) const {
  return worlds_.test(w);
}

bool Event::equivalent(const Event& other) const {
  check_same_universe(*this, other);
  return worlds_ == other.worlds_;
}

std::string Event::render(const Node& node, const Universe& universe, int parent_prec) {
  // Precedence: ~ (3) > & (2) > | (1).
  switch (node.kind) {
    case Kind::True:
      return "T";
    case Kind::False:
      return "F";
    case Kind::Atom:
      return universe.atom_name(node.atom);
    case Kind::Not:
      return "~" + render(*node.left, universe, 3);
    case Kind::And: {
      std::string s = render(*node.left, universe, 2) + " & " + render(*node.right, universe, 2);
      return parent_prec > 2 ? "(" + s + ")" : s;
    }
    case Kind::Or: {
      std::string s = render(*node.left, universe, 1) + " | " + render(*node.right, universe, 1);
      return parent_prec > 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

std::string Event::to_string() const {
  return render(*node_, *universe_, 0);
}

bool implies(const Event& a, const Event& b) {
  return (a && !b).worlds().none();
}

}  // namespace crq
