#include "crq/conditional.hpp"

#include <stdexcept>

namespace crq {

Rat trivalent_to_rational(TrivalentValue v) {
  switch (v) {
    case TrivalentValue::False:
      return Rat(0);
    case TrivalentValue::Void:
      return Rat(1) / 2;
    case TrivalentValue::True:
      return Rat(1);
  }
  return Rat(0);
}

ConditionalEvent::ConditionalEvent(Event consequent, Event antecedent)
    : consequent_(std::move(consequent)), antecedent_(std::move(antecedent)) {
  if (!(consequent_ && antecedent_).universe()) {
    throw DomainError("conditional event over mismatched universes");
  }
  if (!antecedent_.is_satisfiable()) {
    throw DomainError("conditional event with impossible antecedent");
  }
}

TrivalentValue ConditionalEvent::eval(World w) const {
  if (!antecedent_.evaluate(w)) return TrivalentValue::Void;
  return consequent_.evaluate(w) ? TrivalentValue::True : TrivalentValue::False;
}

bool ConditionalEvent::equivalent(const ConditionalEvent& other) const {
  return antecedent_.equivalent(other.antecedent_) && true_part().equivalent(other.true_part());
}

std::string ConditionalEvent::to_string() const {
  if (is_unconditional()) return consequent_.to_string();
  return "(" + consequent_.to_string() + " given " + antecedent_.to_string() + ")";
}

ConditionalEvent negate(const ConditionalEvent& c) {
  return ConditionalEvent(!c.consequent(), c.antecedent());
}

bool gn_implies(const ConditionalEvent& c1, const ConditionalEvent& c2) {
  return implies(c1.true_part(), c2.true_part()) && implies(c2.false_part(), c1.false_part());
}

ConditionalEvent quasi_conjunction(std::span<const ConditionalEvent> family) {
  if (family.empty()) throw std::invalid_argument("quasi_conjunction of an empty family");
  Event consequent = !family[0].antecedent() || family[0].true_part();
  Event antecedent = family[0].antecedent();
  for (std::size_t i = 1; i < family.size(); ++i) {
    consequent = consequent && (!family[i].antecedent() || family[i].true_part());
    antecedent = antecedent || family[i].antecedent();
  }
  return ConditionalEvent(std::move(consequent), std::move(antecedent));
}

std::optional<ConditionalEvent> df_conjunction(std::span<const ConditionalEvent> family) {
  if (family.empty()) throw std::invalid_argument("df_conjunction of an empty family");
  Event all_true = family[0].true_part();
  Event some_false = family[0].false_part();
  for (std::size_t i = 1; i < family.size(); ++i) {
    all_true = all_true && family[i].true_part();
    some_false = some_false || family[i].false_part();
  }
  Event antecedent = all_true || some_false;
  if (!antecedent.is_satisfiable()) return std::nullopt;
  return ConditionalEvent(std::move(all_true), std::move(antecedent));
}

std::optional<ConditionalEvent> df_iterated(const ConditionalEvent& consequent,
                                            const ConditionalEvent& antecedent) {
  Event combined = antecedent.true_part() && consequent.antecedent();
  if (!combined.is_satisfiable()) return std::nullopt;
  return ConditionalEvent(consequent.consequent(), std::move(combined));
}

}  // namespace crq
