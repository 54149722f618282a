#include "crq/entailment.hpp"

#include <algorithm>
#include <stdexcept>

namespace crq {

namespace {

Assessment all_ones_assessment(std::span<const ConditionalEvent> family) {
  Assessment a;
  for (const auto& c : family) a.add(c, Rat(1));
  return a;
}

ConditionalEvent as_conditional(const Event& e) {
  return ConditionalEvent(e, Event::top(e.universe()));
}

// Subsets in size-then-lexicographic order, so the reported witness is the
// smallest one.
std::vector<std::uint32_t> subset_order(std::size_t n) {
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  return subsets;
}

bool incoherence_characterization(std::span<const ConditionalEvent> family,
                                  const ConditionalEvent& conclusion) {
  Assessment a = all_ones_assessment(family);
  a.add(conclusion, Rat(0));
  return !check_coherence(a).coherent;
}

void append_conclusion(PdtReport* report, std::string description, bool verified) {
  report->conclusions.push_back(PdtConclusion{std::move(description), verified});
  if (!verified) {
    throw std::logic_error("derived conclusion failed verification: " +
                           report->conclusions.back().description);
  }
}

// Prevision of the iterated conditional under all premises (and the
// consequent) assessed at 1; also reports whether the realized table is
// constant 1.
std::pair<Rat, bool> iterated_under_all_ones(const ConditionalEvent& consequent,
                                             std::span<const ConditionalEvent> antecedents) {
  const IteratedTable t = iterated_table(
      consequent, antecedents, SubsetPrevisions::all_ones(antecedents.size() + 1));
  if (!t.mu_is_point) {
    throw std::logic_error("all-ones iterated prevision must be a point");
  }
  bool constant_one = true;
  for (const Rat& v : t.values) {
    if (v != 1) {
      constant_one = false;
      break;
    }
  }
  return {t.mu, constant_one};
}

}  // namespace

bool p_consistent(std::span<const ConditionalEvent> family) {
  if (family.empty()) throw std::invalid_argument("p-consistency of an empty family");
  return check_coherence(all_ones_assessment(family)).coherent;
}

EntailmentVerdict p_entails(std::span<const ConditionalEvent> family,
                            const ConditionalEvent& conclusion, CrossOracle oracle) {
  if (!p_consistent(family)) {
    throw DomainError("p-entailment requires a p-consistent premise family");
  }

  EntailmentVerdict verdict;
  if (implies(conclusion.antecedent(), conclusion.consequent())) {
    verdict.entails = true;
    verdict.witness = EntailmentVerdict::Witness::TrivialConclusion;
  } else {
    for (const std::uint32_t mask : subset_order(family.size())) {
      std::vector<ConditionalEvent> subset;
      std::vector<std::size_t> indices;
      for (std::size_t i = 0; i < family.size(); ++i) {
        if ((mask >> i) & 1) {
          subset.push_back(family[i]);
          indices.push_back(i);
        }
      }
      if (gn_implies(quasi_conjunction(subset), conclusion)) {
        verdict.entails = true;
        verdict.witness = EntailmentVerdict::Witness::QcSubset;
        verdict.subset = std::move(indices);
        break;
      }
    }
  }

  if (!verdict.entails) {
    verdict.witness = EntailmentVerdict::Witness::Countermodel;
    const RatInterval extension =
        extension_interval(all_ones_assessment(family), conclusion);
    Assessment counter = all_ones_assessment(family);
    counter.add(conclusion, extension.lo);
    if (extension.lo == 1) {
      throw std::logic_error("subset characterization says no entailment, but only 1 extends");
    }
    verdict.countermodel = std::move(counter);
  }

  if (oracle == CrossOracle::Run) {
    if (incoherence_characterization(family, conclusion) != verdict.entails) {
      throw std::logic_error(
          "p-entailment characterizations disagree: quasi-conjunction subsets vs "
          "incoherence of the (1,...,1,0) assessment");
    }
  }
  return verdict;
}

bool replay_witness(const EntailmentVerdict& verdict, std::span<const ConditionalEvent> family,
                    const ConditionalEvent& conclusion) {
  switch (verdict.witness) {
    case EntailmentVerdict::Witness::TrivialConclusion:
      return implies(conclusion.antecedent(), conclusion.consequent());
    case EntailmentVerdict::Witness::QcSubset: {
      if (verdict.subset.empty()) return false;
      std::vector<ConditionalEvent> subset;
      for (std::size_t i : verdict.subset) subset.push_back(family[i]);
      return gn_implies(quasi_conjunction(subset), conclusion);
    }
    case EntailmentVerdict::Witness::Countermodel: {
      if (!verdict.countermodel) return false;
      const Assessment& counter = *verdict.countermodel;
      if (counter.value(counter.size() - 1) >= 1) return false;
      return check_coherence(counter).coherent;
    }
  }
  return false;
}

ConverseReport converse_check(std::span<const ConditionalEvent> gamma, const Event& a,
                              const Event& b) {
  ConverseReport report;
  report.premise_entails = p_entails(gamma, ConditionalEvent(b, a)).entails;
  if (!report.premise_entails) return report;

  std::vector<ConditionalEvent> with_a(gamma.begin(), gamma.end());
  with_a.push_back(as_conditional(a));
  report.applicable = p_consistent(with_a);
  if (!report.applicable) return report;

  report.conclusion_holds = p_entails(with_a, as_conditional(b)).entails;
  if (!report.conclusion_holds) {
    throw std::logic_error("converse deduction property failed to verify");
  }
  return report;
}

PdtReport deduction_theorem(std::span<const ConditionalEvent> gamma, const Event& a,
                            const Event& b) {
  if (!a.is_satisfiable() || !b.is_satisfiable()) {
    throw DomainError("deduction theorem requires possible events A and B");
  }
  PdtReport report;
  std::vector<ConditionalEvent> gamma_a(gamma.begin(), gamma.end());
  gamma_a.push_back(as_conditional(a));

  const bool consistent = p_consistent(gamma_a);
  report.hypotheses.push_back(
      {"Gamma+{" + a.to_string() + "} p-consistent", consistent, true});
  if (!consistent) return report;

  const bool entails_a = p_entails(gamma, as_conditional(a)).entails;
  report.hypotheses.push_back({"Gamma p-entails " + a.to_string(), entails_a, true});
  const bool entails_b = p_entails(gamma_a, as_conditional(b)).entails;
  report.hypotheses.push_back(
      {"Gamma+{" + a.to_string() + "} p-entails " + b.to_string(), entails_b, true});

  // Equivalence of the three formulations, checkable whenever Gamma+{A} is
  // p-consistent.
  const bool via_ab = p_entails(gamma, as_conditional(a && b)).entails;
  const bool via_pair = entails_a && p_entails(gamma, as_conditional(b)).entails;
  report.equivalences.emplace_back("Gamma=>A with Gamma+{A}=>B iff Gamma=>AB",
                                   (entails_a && entails_b) == via_ab);
  report.equivalences.emplace_back("Gamma=>AB iff Gamma=>A and Gamma=>B", via_ab == via_pair);
  for (const auto& [name, ok] : report.equivalences) {
    if (!ok) throw std::logic_error("equivalence failed: " + name);
  }

  if (!entails_a || !entails_b) return report;
  report.applicable = true;

  const ConditionalEvent b_given_a(b, a);
  const ConditionalEvent a_given_b(a, b);
  const ConditionalEvent biconditional(a && b, a || b);
  append_conclusion(&report, "Gamma p-entails " + b_given_a.to_string(),
                    p_entails(gamma, b_given_a).entails);
  append_conclusion(&report, "Gamma p-entails " + a_given_b.to_string(),
                    p_entails(gamma, a_given_b).entails);
  append_conclusion(&report, "Gamma p-entails " + biconditional.to_string(),
                    p_entails(gamma, biconditional).entails);
  return report;
}

PdtReport deduction_theorem_generalized(std::span<const ConditionalEvent> gamma,
                                        const ConditionalEvent& a_given_h,
                                        const ConditionalEvent& b_given_k) {
  if (!a_given_h.true_part().is_satisfiable() || !b_given_k.true_part().is_satisfiable()) {
    throw DomainError("generalized deduction theorem requires possible true parts");
  }
  PdtReport report;
  std::vector<ConditionalEvent> gamma_a(gamma.begin(), gamma.end());
  gamma_a.push_back(a_given_h);

  const bool consistent = p_consistent(gamma_a);
  report.hypotheses.push_back(
      {"Gamma+{" + a_given_h.to_string() + "} p-consistent", consistent, true});
  if (!consistent) return report;

  const bool entails_a = p_entails(gamma, a_given_h).entails;
  report.hypotheses.push_back(
      {"Gamma p-entails " + a_given_h.to_string(), entails_a, true});
  const bool entails_b = p_entails(gamma_a, b_given_k).entails;
  report.hypotheses.push_back({"Gamma+{" + a_given_h.to_string() + "} p-entails " +
                                    b_given_k.to_string(),
                                entails_b, true});

  const bool via_pair = entails_a && p_entails(gamma, b_given_k).entails;
  report.equivalences.emplace_back("hypotheses iff Gamma p-entails both conditionals",
                                   (entails_a && entails_b) == via_pair);
  if (!report.equivalences.back().second) {
    throw std::logic_error("generalized deduction equivalence failed");
  }

  if (!entails_a || !entails_b) return report;
  report.applicable = true;

  std::vector<ConditionalEvent> just_a{a_given_h};
  std::vector<ConditionalEvent> just_b{b_given_k};
  const auto [mu_ba, unused_ba] = iterated_under_all_ones(b_given_k, just_a);
  append_conclusion(&report,
                    "P[" + b_given_k.to_string() + " given " + a_given_h.to_string() + "] = 1",
                    mu_ba == 1);
  const auto [mu_ab, unused_ab] = iterated_under_all_ones(a_given_h, just_b);
  append_conclusion(&report,
                    "P[" + a_given_h.to_string() + " given " + b_given_k.to_string() + "] = 1",
                    mu_ab == 1);
  return report;
}

PdtReport weak_deduction(std::span<const ConditionalEvent> gamma, const Event& a, const Event& b,
                         const Event& h_star, WeakPdtMode mode) {
  if (!a.is_satisfiable() || !b.is_satisfiable()) {
    throw DomainError("weak deduction requires possible events A and B");
  }
  const Event domain = mode == WeakPdtMode::Asymmetric ? (a || h_star) : (a || b || h_star);
  const ConditionalEvent a_given_d(a, domain);
  const ConditionalEvent b_given_d(b, domain);

  PdtReport report;
  std::vector<ConditionalEvent> gamma_a(gamma.begin(), gamma.end());
  gamma_a.push_back(a_given_d);

  const bool consistent = p_consistent(gamma_a);
  report.hypotheses.push_back(
      {"Gamma+{" + a_given_d.to_string() + "} p-consistent", consistent, true});
  if (!consistent) return report;

  const bool entails_a = p_entails(gamma, a_given_d).entails;
  report.hypotheses.push_back({"Gamma p-entails " + a_given_d.to_string(), entails_a, true});
  const bool entails_b = p_entails(gamma_a, b_given_d).entails;
  report.hypotheses.push_back(
      {"Gamma+{" + a_given_d.to_string() + "} p-entails " + b_given_d.to_string(),
       entails_b, true});
  if (!entails_a || !entails_b) return report;
  report.applicable = true;

  const ConditionalEvent b_given_a(b, a);
  append_conclusion(&report, "Gamma p-entails " + b_given_a.to_string(),
                    p_entails(gamma, b_given_a).entails);
  if (mode == WeakPdtMode::Symmetric) {
    const ConditionalEvent a_given_b(a, b);
    append_conclusion(&report, "Gamma p-entails " + a_given_b.to_string(),
                      p_entails(gamma, a_given_b).entails);
  }
  return report;
}

GieReport general_import_export(std::span<const ConditionalEvent> family,
                                const ConditionalEvent& conclusion) {
  if (!p_consistent(family)) {
    throw DomainError("General Import-Export requires a p-consistent premise family");
  }
  GieReport report;
  report.entails = p_entails(family, conclusion).entails;

  std::vector<ConditionalEvent> with_h(family.begin(), family.end());
  with_h.push_back(as_conditional(conclusion.antecedent()));
  report.compatible = p_consistent(with_h);

  const std::string left_desc =
      conclusion.to_string() + " given C(premises)";

  if (report.entails && report.compatible) {
    const auto [left, left_const] = iterated_under_all_ones(conclusion, family);
    const auto [right, right_const] =
        iterated_under_all_ones(as_conditional(conclusion.consequent()), with_h);
    report.left_mu = left;
    report.right_mu = right;
    report.satisfied = left == 1 && right == 1 && left_const && right_const;
    if (!report.satisfied) {
      throw std::logic_error("General Import-Export certification failed to verify");
    }
    report.detail = "satisfied, both sides 1";
    return report;
  }

  if (!report.entails) {
    report.left_range = extension_interval(all_ones_assessment(family), conclusion);
    if (report.compatible) {
      report.right_range = extension_interval(all_ones_assessment(with_h),
                                              as_conditional(conclusion.consequent()));
    }
    report.detail = "not established (" + left_desc + " != 1)";
  } else {
    report.detail =
        "not established (premises with " + conclusion.antecedent().to_string() +
        " are not p-consistent)";
  }
  return report;
}

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::A1:
      return "a.1";
    case CaseLabel::A2:
      return "a.2";
    case CaseLabel::B1:
      return "b.1";
    case CaseLabel::B2:
      return "b.2";
    case CaseLabel::B3:
      return "b.3";
  }
  return "?";
}

CaseLabel classify_case(std::span<const ConditionalEvent> family,
                        const ConditionalEvent& conclusion) {
  if (!p_consistent(family)) {
    throw DomainError("case classification requires a p-consistent premise family");
  }
  // For an unconditional conclusion the compatibility event is the
  // conclusion itself, matching the taxonomy's own worked example.
  const Event compatibility =
      conclusion.is_unconditional() ? conclusion.consequent() : conclusion.antecedent();

  std::vector<ConditionalEvent> with_h(family.begin(), family.end());
  with_h.push_back(as_conditional(compatibility));

  const bool entails_conclusion = p_entails(family, conclusion).entails;
  if (!p_consistent(with_h)) {
    return entails_conclusion ? CaseLabel::A2 : CaseLabel::A1;
  }
  const bool entails_consequent =
      p_entails(with_h, as_conditional(conclusion.consequent())).entails;
  if (entails_conclusion && !entails_consequent) {
    throw std::logic_error("impossible taxonomy case: conclusion entailed but consequent not");
  }
  if (entails_conclusion) return CaseLabel::B3;
  return entails_consequent ? CaseLabel::B2 : CaseLabel::B1;
}

}  // namespace crq
