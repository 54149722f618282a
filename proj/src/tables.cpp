#include "crq/tables.hpp"

#include <algorithm>
#include <stdexcept>

namespace crq {

namespace {

std::uint32_t void_mask(const std::vector<TrivalentValue>& pattern,
                        std::span<const std::size_t> members) {
  std::uint32_t mask = 0;
  for (std::size_t i : members) {
    if (pattern[i] == TrivalentValue::Void) mask |= std::uint32_t{1} << i;
  }
  return mask;
}

bool any_false(const std::vector<TrivalentValue>& pattern, std::span<const std::size_t> members) {
  for (std::size_t i : members) {
    if (pattern[i] == TrivalentValue::False) return true;
  }
  return false;
}

std::string subset_string(std::uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < 32; ++i) {
    if ((mask >> i) & 1) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  }
  return s + "}";
}

// Value of the conjunction of `members` at a constituent of the full family.
// Missing x_S previsions surface as DomainError.
Rat projected_value(const std::vector<TrivalentValue>& pattern,
                    std::span<const std::size_t> members, const SubsetPrevisions& previsions) {
  if (any_false(pattern, members)) return Rat(0);
  const std::uint32_t voids = void_mask(pattern, members);
  if (voids == 0) return Rat(1);
  const auto x = previsions.get(voids);
  if (!x) {
    throw DomainError("missing prevision x_S for subset " + subset_string(voids));
  }
  return *x;
}

void check_frechet(const SubsetPrevisions& previsions, std::uint32_t subset,
                   const Rat& value, std::size_t n) {
  std::vector<Rat> marginals;
  for (std::size_t i = 0; i < n; ++i) {
    if (!((subset >> i) & 1)) continue;
    const auto xi = previsions.get(std::uint32_t{1} << i);
    if (!xi) throw DomainError("missing singleton prevision for member " + std::to_string(i + 1));
    marginals.push_back(*xi);
  }
  if (marginals.size() < 2) return;
  const RatInterval bounds = frechet_bounds(marginals);
  if (value < bounds.lo || value > bounds.hi) {
    throw DomainError("prevision " + to_fraction(value) + " for subset " + subset_string(subset) +
                      " violates the Fréchet-Hoeffding bounds [" + to_fraction(bounds.lo) + ", " +
                      to_fraction(bounds.hi) + "]");
  }
}

void check_singleton(const ConditionalEvent& c, const Rat& x, std::size_t index) {
  if (!in_unit_interval(x)) {
    throw DomainError("prevision outside [0,1] for member " + std::to_string(index + 1));
  }
  if (!c.false_part().is_satisfiable() && x != 1) {
    throw DomainError("member " + std::to_string(index + 1) +
                      " has antecedent included in consequent; only probability 1 is coherent");
  }
  if (!c.true_part().is_satisfiable() && x != 0) {
    throw DomainError("member " + std::to_string(index + 1) +
                      " has impossible true part; only probability 0 is coherent");
  }
}

std::size_t constituent_of_world(const std::vector<Constituent>& cons, World w) {
  for (std::size_t h = 0; h < cons.size(); ++h) {
    if (std::binary_search(cons[h].worlds.begin(), cons[h].worlds.end(), w)) return h;
  }
  throw std::logic_error("world not covered by any constituent");
}

}  // namespace

void SubsetPrevisions::set(std::uint32_t subset, Rat value) {
  if (subset == 0) throw std::invalid_argument("empty prevision subset");
  if (!in_unit_interval(value)) {
    throw DomainError("prevision " + to_fraction(value) + " outside [0,1]");
  }
  x_[subset] = std::move(value);
}

std::optional<Rat> SubsetPrevisions::get(std::uint32_t subset) const {
  const auto it = x_.find(subset);
  if (it == x_.end()) return std::nullopt;
  return it->second;
}

SubsetPrevisions SubsetPrevisions::all_ones(std::size_t n) {
  SubsetPrevisions p;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) p.set(s, Rat(1));
  return p;
}

WorldDistribution::WorldDistribution(UniversePtr universe, std::vector<Rat> mass)
    : universe_(std::move(universe)), mass_(std::move(mass)) {
  if (mass_.size() != universe_->world_count()) {
    throw DomainError("world distribution has wrong length");
  }
  Rat total(0);
  for (const Rat& m : mass_) {
    if (m < 0) throw DomainError("negative world mass");
    total += m;
  }
  if (total != 1) throw DomainError("world masses must sum to 1");
}

Rat WorldDistribution::probability(const Event& event) const {
  Rat p(0);
  for (World w = 0; w < universe_->world_count(); ++w) {
    if (event.evaluate(w)) p += mass_[w];
  }
  return p;
}

Rat ValueTable::value_at(World w) const {
  return values[constituent_of_world(table_constituents, w)];
}

ValueTable conjunction_table(std::span<const ConditionalEvent> family,
                             SubsetPrevisions previsions) {
  if (family.empty()) throw std::invalid_argument("conjunction of an empty family");
  const std::size_t n = family.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = previsions.get(std::uint32_t{1} << i);
    if (!xi) throw DomainError("missing singleton prevision for member " + std::to_string(i + 1));
    check_singleton(family[i], *xi, i);
  }

  ValueTable table;
  table.family.assign(family.begin(), family.end());
  table.table_constituents = constituents(family);

  std::vector<std::size_t> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = i;

  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  bool all_void_reachable = false;
  for (const Constituent& c : table.table_constituents) {
    if (any_false(c.pattern, members)) {
      table.values.emplace_back(0);
      continue;
    }
    const std::uint32_t voids = void_mask(c.pattern, members);
    if (voids == 0) {
      table.values.emplace_back(1);
      continue;
    }
    if (voids == full) all_void_reachable = true;
    const auto x = previsions.get(voids);
    if (!x) {
      throw DomainError("missing prevision x_S for subset " + subset_string(voids));
    }
    check_frechet(previsions, voids, *x, n);
    table.values.push_back(*x);
  }

  if (const auto z = previsions.get(full)) {
    check_frechet(previsions, full, *z, n);
    table.prevision = *z;
  } else if (all_void_reachable) {
    throw DomainError("the all-void constituent is possible; the full-family prevision x_{1..n} "
                      "is a required input");
  }
  table.previsions = std::move(previsions);

  if (!table.prevision) {
    // All-void unreachable: the prevision is forced only if the table is a
    // constant or a member indicator.
    table.prevision = forced_table_prevision(table);
  }
  return table;
}

RatInterval frechet_bounds(std::span<const Rat> marginals) {
  if (marginals.empty()) throw std::invalid_argument("frechet_bounds of an empty list");
  Rat sum(0);
  Rat low_min = marginals[0];
  for (const Rat& x : marginals) {
    sum += x;
    if (x < low_min) low_min = x;
  }
  Rat lo = sum - Rat(static_cast<long>(marginals.size()) - 1);
  if (lo < 0) lo = Rat(0);
  return {lo, low_min};
}

Rat conjunction_prevision_pair(const ConditionalEvent& c1, const ConditionalEvent& c2,
                               const Rat& x, const Rat& y, const WorldDistribution& dist) {
  const Event both = c1.true_part() && c2.true_part();
  const Event void1_true2 = !c1.antecedent() && c2.true_part();
  const Event true1_void2 = c1.true_part() && !c2.antecedent();
  const Rat denom = dist.probability(c1.antecedent() || c2.antecedent());
  if (denom == 0) {
    throw DomainError("P(H or K) = 0: the pair prevision is not determined by the distribution");
  }
  return (dist.probability(both) + x * dist.probability(void1_true2) +
          y * dist.probability(true1_void2)) /
         denom;
}

SubsetPrevisions previsions_from_distribution(std::span<const ConditionalEvent> family,
                                              const WorldDistribution& dist) {
  const std::size_t n = family.size();
  if (n > 16) throw DomainError("family too large for subset previsions");
  SubsetPrevisions out;

  // Bottom-up over subset size: x_S needs x_S' for all nonempty S' inside S.
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) subsets.push_back(s);
  std::sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  for (const std::uint32_t s : subsets) {
    Event disj = Event::bottom(family[0].universe());
    for (std::size_t i = 0; i < n; ++i) {
      if ((s >> i) & 1) disj = disj || family[i].antecedent();
    }
    const Rat denom = dist.probability(disj);
    if (denom == 0) {
      throw DomainError("distribution gives zero mass to an antecedent disjunction");
    }
    Rat numer(0);
    for (World w = 0; w < dist.universe()->world_count(); ++w) {
      if (dist.mass(w) == 0) continue;
      bool some_false = false;
      std::uint32_t voids = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((s >> i) & 1)) continue;
        const TrivalentValue v = family[i].eval(w);
        if (v == TrivalentValue::False) some_false = true;
        if (v == TrivalentValue::Void) voids |= std::uint32_t{1} << i;
      }
      if (some_false || voids == s) continue;
      if (voids == 0) {
        numer += dist.mass(w);
      } else {
        numer += *out.get(voids) * dist.mass(w);
      }
    }
    out.set(s, numer / denom);
  }
  return out;
}

std::optional<ConditionalEvent> reduce_pair_special(const ConditionalEvent& c1,
                                                    const ConditionalEvent& c2) {
  const Event true1_void2 = c1.true_part() && !c2.antecedent();
  const Event void1_true2 = !c1.antecedent() && c2.true_part();
  if (true1_void2.is_satisfiable() || void1_true2.is_satisfiable()) return std::nullopt;
  return ConditionalEvent(c1.true_part() && c2.true_part(),
                          c1.antecedent() || c2.antecedent());
}

std::optional<Rat> forced_table_prevision(const ValueTable& table) {
  bool constant = true;
  for (const Rat& v : table.values) {
    if (v != table.values.front()) {
      constant = false;
      break;
    }
  }
  if (constant) return table.values.front();

  for (std::size_t i = 0; i < table.family.size(); ++i) {
    const Rat xi = *table.previsions.get(std::uint32_t{1} << i);
    bool match = true;
    for (std::size_t h = 0; h < table.values.size(); ++h) {
      Rat indicator;
      switch (table.table_constituents[h].pattern[i]) {
        case TrivalentValue::True:
          indicator = Rat(1);
          break;
        case TrivalentValue::False:
          indicator = Rat(0);
          break;
        case TrivalentValue::Void:
          indicator = xi;
          break;
      }
      if (table.values[h] != indicator) {
        match = false;
        break;
      }
    }
    if (match) return xi;
  }
  return std::nullopt;
}

Rat IteratedTable::value_at(World w) const {
  if (!mu_is_point) throw DomainError("iterated table has no point values (mu is an interval)");
  return values[constituent_of_world(table_constituents, w)];
}

IteratedTable iterated_table(const ConditionalEvent& consequent,
                             std::span<const ConditionalEvent> antecedent_family,
                             SubsetPrevisions previsions) {
  if (antecedent_family.empty()) {
    throw std::invalid_argument("iterated conditional with empty antecedent family");
  }
  const std::size_t n = antecedent_family.size();
  std::vector<ConditionalEvent> combined(antecedent_family.begin(), antecedent_family.end());
  combined.push_back(consequent);

  ValueTable full = conjunction_table(combined, previsions);

  std::vector<std::size_t> ante_members(n);
  for (std::size_t i = 0; i < n; ++i) ante_members[i] = i;
  const std::uint32_t ante_mask = (std::uint32_t{1} << n) - 1;

  IteratedTable out{consequent,
                    {antecedent_family.begin(), antecedent_family.end()},
                    std::move(full.table_constituents),
                    std::move(full.values),
                    {},
                    Rat(0),
                    Rat(0),
                    true,
                    Rat(0),
                    {Rat(0), Rat(0)},
                    {},
                    std::move(full.previsions)};

  const auto x = out.previsions.get(ante_mask);
  if (!x) {
    throw DomainError("missing prevision of the antecedent conjunction");
  }
  out.antecedent_prevision = *x;

  for (const Constituent& c : out.table_constituents) {
    out.antecedent_values.push_back(projected_value(c.pattern, ante_members, out.previsions));
  }

  // An antecedent conjunction that is identically 0 gives the iterated
  // conditional no meaning.
  bool identically_zero = out.antecedent_prevision == 0;
  for (const Rat& v : out.antecedent_values) {
    if (v != 0) {
      identically_zero = false;
      break;
    }
  }
  if (identically_zero) {
    throw DomainError("antecedent conjunction is identically 0; the iterated conditional "
                      "is not defined");
  }

  // Conjunction monotonicity: the combined table can never exceed the
  // antecedent table. Violations mean the previsions are incoherent.
  for (std::size_t h = 0; h < out.table_constituents.size(); ++h) {
    if (out.conjunction_values[h] > out.antecedent_values[h]) {
      throw DomainError("previsions violate conjunction monotonicity at constituent " +
                        out.table_constituents[h].pattern_string());
    }
  }

  if (!full.prevision) {
    throw DomainError("prevision of the combined conjunction is required");
  }
  out.conjunction_prevision = *full.prevision;
  if (out.conjunction_prevision > out.antecedent_prevision) {
    throw DomainError("previsions violate conjunction monotonicity: z > x");
  }

  if (out.antecedent_prevision > 0) {
    // Compound prevision theorem: z = mu * x.
    out.mu = out.conjunction_prevision / out.antecedent_prevision;
    out.mu_range = {out.mu, out.mu};
    for (std::size_t h = 0; h < out.table_constituents.size(); ++h) {
      out.values.push_back(out.conjunction_values[h] +
                           out.mu * (Rat(1) - out.antecedent_values[h]));
    }
    return out;
  }

  // x = 0: mu is pinned only to the interval where the prevision lies inside
  // the range of the table's own values. Constituents whose value is
  // identically mu (money back) impose nothing.
  out.mu_is_point = false;
  bool have_lo = false, have_hi = false;
  Rat lo, hi;
  for (std::size_t h = 0; h < out.table_constituents.size(); ++h) {
    const Rat& conj = out.conjunction_values[h];
    const Rat& ante = out.antecedent_values[h];
    if (ante == 0 && conj == 0) continue;  // value == mu identically
    if (ante > 0) {
      const Rat ratio = conj / ante;
      if (!have_lo || ratio < lo) {
        lo = ratio;
        have_lo = true;
      }
      if (!have_hi || ratio > hi) {
        hi = ratio;
        have_hi = true;
      }
    } else {
      // value = conj + mu > mu: only an upper direction, never a lower one.
      have_hi = true;
      hi = Rat(1);
    }
  }
  if (!have_lo || !have_hi || lo > 1) {
    throw DomainError("no coherent prevision exists for the iterated conditional; "
                      "the supplied previsions are incoherent");
  }
  if (hi > 1) hi = Rat(1);
  out.mu_range = {lo, hi};
  return out;
}

bool iterated_negation_check(const IteratedTable& table) {
  if (table.antecedent_family.size() != 1) {
    throw std::invalid_argument("negation check is defined for a single-conditional antecedent");
  }
  if (!table.mu_is_point) {
    throw std::invalid_argument("negation check needs a point prevision");
  }
  const Rat x = table.antecedent_prevision;
  const Rat y = *table.previsions.get(2);
  const Rat z = table.conjunction_prevision;

  SubsetPrevisions negated;
  negated.set(1, x);
  negated.set(2, Rat(1) - y);
  negated.set(3, x - z);
  const IteratedTable neg =
      iterated_table(negate(table.consequent), table.antecedent_family, negated);
  if (!neg.mu_is_point) return false;
  if (neg.mu + table.mu != 1) return false;

  const std::size_t worlds = table.consequent.universe()->world_count();
  for (World w = 0; w < worlds; ++w) {
    if (neg.value_at(w) != Rat(1) - table.value_at(w)) return false;
  }
  return true;
}

std::pair<Rat, Rat> biconditional_values(const Rat& x, const Rat& y) {
  if (!in_unit_interval(x) || !in_unit_interval(y)) {
    throw DomainError("biconditional inputs outside [0,1]");
  }
  Rat z(0);
  if (x + y > 0) z = (x * y) / (x + y - x * y);
  return {z, x + y - z};
}

bool decomposition_check(const ConditionalEvent& a_given_h, const ConditionalEvent& b_given_k,
                         const Rat& x, const Rat& y, const Rat& z, const Rat& eta) {
  if (z + eta != x) {
    throw DomainError("decomposition previsions violate z + eta = x: " + to_fraction(z) + " + " +
                      to_fraction(eta) + " != " + to_fraction(x));
  }
  std::vector<ConditionalEvent> pos{a_given_h, b_given_k};
  std::vector<ConditionalEvent> neg{a_given_h, negate(b_given_k)};
  SubsetPrevisions p_pos, p_neg;
  p_pos.set(1, x);
  p_pos.set(2, y);
  p_pos.set(3, z);
  p_neg.set(1, x);
  p_neg.set(2, Rat(1) - y);
  p_neg.set(3, eta);
  const ValueTable t_pos = conjunction_table(pos, p_pos);
  const ValueTable t_neg = conjunction_table(neg, p_neg);

  const std::size_t worlds = a_given_h.universe()->world_count();
  for (World w = 0; w < worlds; ++w) {
    Rat indicator = x;
    if (a_given_h.eval(w) == TrivalentValue::True) indicator = Rat(1);
    if (a_given_h.eval(w) == TrivalentValue::False) indicator = Rat(0);
    if (t_pos.value_at(w) + t_neg.value_at(w) != indicator) return false;
  }
  return true;
}

bool monotonicity_check(const ValueTable& table, std::span<const std::size_t> subfamily) {
  for (std::size_t h = 0; h < table.table_constituents.size(); ++h) {
    const Rat sub =
        projected_value(table.table_constituents[h].pattern, subfamily, table.previsions);
    if (table.values[h] > sub) return false;
  }
  return true;
}

}  // namespace crq
