#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crq/coherence.hpp"
#include "crq/conditional.hpp"
#include "crq/tables.hpp"

namespace crq {

/// Whether p_entails double-checks the subset verdict against the
/// incoherence-of-(1,...,1,0) characterization. The two must always agree;
/// a mismatch is a fatal self-test failure.
enum class CrossOracle { Run, Skip };

struct EntailmentVerdict {
  bool entails = false;
  enum class Witness { TrivialConclusion, QcSubset, Countermodel } witness;
  /// QcSubset: premise indices whose quasi conjunction is included in the
  /// conclusion (smallest, then lexicographically first).
  std::vector<std::size_t> subset;
  /// Countermodel: all premises at 1 with the conclusion strictly below 1.
  std::optional<Assessment> countermodel;
};

/// The all-ones assessment on the family is coherent.
bool p_consistent(std::span<const ConditionalEvent> family);

/// p-entailment, decided by the quasi-conjunction subset characterization:
/// the conclusion is trivial (antecedent implies consequent) or some
/// nonempty subset S of the premises has QC(S) included in the conclusion.
/// Premises must be p-consistent.
EntailmentVerdict p_entails(std::span<const ConditionalEvent> family,
                            const ConditionalEvent& conclusion,
                            CrossOracle oracle = CrossOracle::Run);

/// Re-verifies a verdict's witness; used when reports are rendered.
bool replay_witness(const EntailmentVerdict& verdict, std::span<const ConditionalEvent> family,
                    const ConditionalEvent& conclusion);

/// From premises entailing B|A: if the premises stay p-consistent with A,
/// they entail B outright together with A.
struct ConverseReport {
  bool premise_entails = false;  // Gamma entails B|A
  bool applicable = false;       // Gamma + {A} p-consistent
  bool conclusion_holds = false; // Gamma + {A} entails B
};
ConverseReport converse_check(std::span<const ConditionalEvent> gamma, const Event& a,
                              const Event& b);

struct PdtHypothesis {
  std::string name;
  bool holds = false;
  bool evaluated = false;
};

struct PdtConclusion {
  std::string description;
  bool verified = false;
};

struct PdtReport {
  std::vector<PdtHypothesis> hypotheses;
  bool applicable = false;
  std::vector<PdtConclusion> conclusions;
  /// Optional named side equivalences re-checked while deriving the report.
  std::vector<std::pair<std::string, bool>> equivalences;
};

/// Probabilistic deduction theorem for events: from Gamma entailing A and
/// Gamma + {A} entailing B, Gamma entails B|A, A|B, and the biconditional
/// AB|(A or B). Also re-verifies the three-way equivalence between
/// (Gamma => A and Gamma+{A} => B), Gamma => AB, and (Gamma => A and
/// Gamma => B).
PdtReport deduction_theorem(std::span<const ConditionalEvent> gamma, const Event& a,
                            const Event& b);

/// Generalization to conditional-event targets: the conclusions are the
/// prevision-1 statuses of the two iterated conditionals.
PdtReport deduction_theorem_generalized(std::span<const ConditionalEvent> gamma,
                                        const ConditionalEvent& a_given_h,
                                        const ConditionalEvent& b_given_k);

enum class WeakPdtMode { Asymmetric, Symmetric };

/// Weak deduction theorems: the hypotheses condition on A or (A or B),
/// widened by an auxiliary event H*. The asymmetric form concludes B|A
/// only, the symmetric form also A|B.
PdtReport weak_deduction(std::span<const ConditionalEvent> gamma, const Event& a, const Event& b,
                         const Event& h_star, WeakPdtMode mode);

struct GieReport {
  bool entails = false;     // premises p-entail the conclusion
  bool compatible = false;  // premises + conclusion antecedent p-consistent
  bool satisfied = false;   // both: the principle is certified
  std::optional<Rat> left_mu, right_mu;
  std::optional<RatInterval> left_range, right_range;
  std::string detail;
};

/// General Import-Export principle for (E|H) | C(premises): certified with
/// both sides constant 1 when the premises p-entail E|H and stay
/// p-consistent with H; otherwise reported as not established with the
/// witnessing value ranges.
GieReport general_import_export(std::span<const ConditionalEvent> family,
                                const ConditionalEvent& conclusion);

enum class CaseLabel { A1, A2, B1, B2, B3 };
std::string to_string(CaseLabel label);

/// Places (premises, conclusion E|H) in the compatibility taxonomy: (a)
/// premises + H not p-consistent, split by whether E|H is entailed; (b)
/// p-consistent, split by the entailments of E|H from the premises and of E
/// from premises + H. The fourth (b) combination is impossible. For an
/// unconditional conclusion the compatibility event is the conclusion
/// itself.
CaseLabel classify_case(std::span<const ConditionalEvent> family,
                        const ConditionalEvent& conclusion);

}  // namespace crq
