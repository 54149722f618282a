#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crq/event.hpp"
#include "crq/rational.hpp"

namespace crq {

/// The three truth values of a conditional event E|H at a world:
/// True if EH holds, False if ~E&H holds, Void if ~H holds.
enum class TrivalentValue { False, Void, True };

/// Numeric rendering 0, 1/2, 1 used by the truth-functional trivalent logics.
Rat trivalent_to_rational(TrivalentValue v);

/// A conditional event E|H with a non-impossible antecedent.
class ConditionalEvent {
 public:
  ConditionalEvent(Event consequent, Event antecedent);

  const Event& consequent() const { return consequent_; }
  const Event& antecedent() const { return antecedent_; }
  const UniversePtr& universe() const { return consequent_.universe(); }

  TrivalentValue eval(World w) const;

  /// Worlds where the conditional is true (EH) / false (~E & H).
  Event true_part() const { return consequent_ && antecedent_; }
  Event false_part() const { return !consequent_ && antecedent_; }

  /// The antecedent is a tautology, i.e. this is a plain event.
  bool is_unconditional() const { return antecedent_.is_tautology(); }

  /// World-by-world equality of the trivalent valuation.
  bool equivalent(const ConditionalEvent& other) const;

  /// Renders as "(E given H)", or just "E" when the antecedent is T.
  std::string to_string() const;

 private:
  Event consequent_;
  Event antecedent_;
};

ConditionalEvent negate(const ConditionalEvent& c);

/// Goodman-Nguyen inclusion: E1|H1 is included in E2|H2 iff
/// E1H1 implies E2H2 and ~E2&H2 implies ~E1&H1.
bool gn_implies(const ConditionalEvent& c1, const ConditionalEvent& c2);

/// Quasi conjunction of a nonempty family:
/// (AND_i (~Hi | EiHi)) | (OR_i Hi).
ConditionalEvent quasi_conjunction(std::span<const ConditionalEvent> family);

/// de Finetti trivalent conjunction of a nonempty family:
/// (AND_i EiHi) | ((AND_i EiHi) | (OR_i ~Ei&Hi)).
/// Returns nullopt when the result does not exist (antecedent impossible,
/// the empty-given-empty case); that outcome is a value, not an error.
std::optional<ConditionalEvent> df_conjunction(std::span<const ConditionalEvent> family);

/// de Finetti iterated conditional (B|K) given (A|H), i.e. B | (A&H&K).
/// Returns nullopt when the combined antecedent is impossible.
std::optional<ConditionalEvent> df_iterated(const ConditionalEvent& consequent,
                                            const ConditionalEvent& antecedent);

}  // namespace crq
