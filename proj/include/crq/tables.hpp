#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "crq/coherence.hpp"
#include "crq/conditional.hpp"
#include "crq/constituents.hpp"
#include "crq/rational.hpp"

namespace crq {

/// Prevision inputs x_S for the sub-conjunctions of a family, keyed by the
/// subset bitmask (bit i = family member i). Singletons are the plain
/// conditional probabilities.
class SubsetPrevisions {
 public:
  void set(std::uint32_t subset, Rat value);
  std::optional<Rat> get(std::uint32_t subset) const;

  /// All members at probability 1 for every subset of an n-member family.
  static SubsetPrevisions all_ones(std::size_t n);

 private:
  std::map<std::uint32_t, Rat> x_;
};

/// Exact probability distribution over the worlds of a universe.
class WorldDistribution {
 public:
  WorldDistribution(UniversePtr universe, std::vector<Rat> mass);
  Rat probability(const Event& event) const;
  const UniversePtr& universe() const { return universe_; }
  const Rat& mass(World w) const { return mass_[w]; }

 private:
  UniversePtr universe_;
  std::vector<Rat> mass_;
};

/// The conjunction of a family of conditional events as a conditional random
/// quantity: 1 on the all-true constituent, 0 wherever some member is false,
/// and the prevision x_S of the void sub-family everywhere else. x_{1..n} is
/// the table's own prevision, carried by the all-void constituent when that
/// is satisfiable.
struct ValueTable {
  std::vector<ConditionalEvent> family;
  std::vector<Constituent> table_constituents;
  std::vector<Rat> values;
  SubsetPrevisions previsions;
  std::optional<Rat> prevision;

  /// Value at the constituent containing world w.
  Rat value_at(World w) const;
};

/// Builds the table from supplied previsions. Every nonempty strict subset
/// needs an x_S; the full-set prevision may be omitted when the all-void
/// constituent is unsatisfiable (it is then inferred only if the table is
/// constant). Inputs violating the Fréchet-Hoeffding bounds of any used
/// subset are rejected as incoherent.
ValueTable conjunction_table(std::span<const ConditionalEvent> family,
                             SubsetPrevisions previsions);

/// Fréchet-Hoeffding bounds [max(sum - n + 1, 0), min(x_i)].
RatInterval frechet_bounds(std::span<const Rat> marginals);

/// Prevision of the pair conjunction under a full world distribution:
/// [P(AHBK) + x P(~H BK) + y P(AH ~K)] / P(H or K). Throws when the
/// disjunction of antecedents has probability zero.
Rat conjunction_prevision_pair(const ConditionalEvent& c1, const ConditionalEvent& c2,
                               const Rat& x, const Rat& y, const WorldDistribution& dist);

/// All subset previsions of a family computed bottom-up from a full world
/// distribution (requires every sub-disjunction of antecedents to carry
/// positive mass).
SubsetPrevisions previsions_from_distribution(std::span<const ConditionalEvent> family,
                                              const WorldDistribution& dist);

/// The special case where the pair conjunction collapses to a single
/// conditional event: AHBK | (H or K) when both AH~K and ~HBK are
/// impossible. Returns nullopt otherwise.
std::optional<ConditionalEvent> reduce_pair_special(const ConditionalEvent& c1,
                                                    const ConditionalEvent& c2);

/// When the table coincides value-wise with the indicator of one of its
/// members (or is constant), its prevision is forced to that member's
/// probability (or the constant).
std::optional<Rat> forced_table_prevision(const ValueTable& table);

/// Iterated conditional (consequent | conjunction of the antecedent family),
/// defined constituent-wise by  value = conj + mu * (1 - antecedent), where
/// conj is the table of the combined family and antecedent the table of the
/// antecedent family. With x = P(antecedent conjunction) > 0 the prevision
/// mu is the point z / x; with x = 0 it is only located in an interval,
/// which is reported as such.
struct IteratedTable {
  ConditionalEvent consequent;
  std::vector<ConditionalEvent> antecedent_family;
  std::vector<Constituent> table_constituents;
  std::vector<Rat> conjunction_values;
  std::vector<Rat> antecedent_values;
  Rat antecedent_prevision;   // x
  Rat conjunction_prevision;  // z
  bool mu_is_point = true;
  Rat mu;
  RatInterval mu_range;
  std::vector<Rat> values;  // filled only when mu is a point
  SubsetPrevisions previsions;

  Rat value_at(World w) const;
};

/// Previsions index the combined family: antecedent members are bits
/// 0..n-1, the consequent is bit n.
IteratedTable iterated_table(const ConditionalEvent& consequent,
                             std::span<const ConditionalEvent> antecedent_family,
                             SubsetPrevisions previsions);

/// Checks the generalized negation: the table of (~B|K)|(A|H) must be the
/// constituent-wise complement of the table of (B|K)|(A|H), with nu = 1-mu.
bool iterated_negation_check(const IteratedTable& table);

/// Closed forms for the biconditional (A|B) and (B|A):
/// z = xy/(x+y-xy) (0 at x=y=0) and mu = x + y - z.
std::pair<Rat, Rat> biconditional_values(const Rat& x, const Rat& y);

/// Verifies (B|K)&(A|H) + (~B|K)&(A|H) = A|H world-by-world, given the
/// prevision split z + eta = x. A violated split is reported by exception.
bool decomposition_check(const ConditionalEvent& a_given_h, const ConditionalEvent& b_given_k,
                         const Rat& x, const Rat& y, const Rat& z, const Rat& eta);

/// Verifies the conjunction monotonicity C(family) <= C(subfamily) on every
/// constituent of the full family.
bool monotonicity_check(const ValueTable& table, std::span<const std::size_t> subfamily);

}  // namespace crq
