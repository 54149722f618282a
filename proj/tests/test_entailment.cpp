#include <doctest.h>

#include <random>
#include <vector>

#include "crq/entailment.hpp"
#include "support/generators.hpp"

using namespace crq;
using crq::testing::Atoms;

namespace {

std::vector<ConditionalEvent> fam(std::initializer_list<ConditionalEvent> list) {
  return {list};
}

}  // namespace

TEST_CASE("p-consistency") {
  Atoms ab({"A", "B"});
  const Event& A = ab[0];

  CHECK_FALSE(p_consistent(fam({ConditionalEvent(A, ab.top()), ConditionalEvent(!A, ab.top())})));

  Atoms ah({"A", "H"});
  CHECK(p_consistent(fam({ConditionalEvent(ah[0], ah[1]), ConditionalEvent(ah[0], !ah[1])})));

  CHECK(p_consistent(fam({ConditionalEvent(ab[0], ab[1])})));
  CHECK_FALSE(p_consistent(fam({ConditionalEvent(!A && A, ab.top())})));
  CHECK_FALSE(p_consistent(fam({ConditionalEvent(!A, A)})));
}

TEST_CASE("p-entailment core verdicts") {
  Atoms abc({"A", "B", "C"});
  const Event& A = abc[0];
  const Event& B = abc[1];
  const Event& C = abc[2];

  SUBCASE("weak transitivity entails C|A") {
    const auto premises = fam({ConditionalEvent(C, B), ConditionalEvent(B, A),
                               ConditionalEvent(A, A || B)});
    const auto verdict = p_entails(premises, ConditionalEvent(C, A));
    CHECK(verdict.entails);
    CHECK(verdict.witness == EntailmentVerdict::Witness::QcSubset);
    CHECK(replay_witness(verdict, premises, ConditionalEvent(C, A)));
  }
  SUBCASE("plain transitivity fails with the (1,1,0) countermodel") {
    const auto premises = fam({ConditionalEvent(C, B), ConditionalEvent(B, A)});
    const auto verdict = p_entails(premises, ConditionalEvent(C, A));
    CHECK_FALSE(verdict.entails);
    REQUIRE(verdict.countermodel.has_value());
    CHECK(verdict.countermodel->value(0) == Rat(1));
    CHECK(verdict.countermodel->value(1) == Rat(1));
    CHECK(verdict.countermodel->value(2) == Rat(0));
    CHECK(replay_witness(verdict, premises, ConditionalEvent(C, A)));
  }
  SUBCASE("A|A is entailed by anything p-consistent") {
    const auto premises = fam({ConditionalEvent(B, C)});
    const auto verdict = p_entails(premises, ConditionalEvent(A, A));
    CHECK(verdict.entails);
    CHECK(verdict.witness == EntailmentVerdict::Witness::TrivialConclusion);
  }
  SUBCASE("inconsistent premises are a precondition error") {
    const auto premises = fam({ConditionalEvent(A, abc.top()), ConditionalEvent(!A, abc.top())});
    CHECK_THROWS_AS(p_entails(premises, ConditionalEvent(B, A)), DomainError);
  }
}

TEST_CASE("System P verdicts") {
  Atoms abc({"A", "B", "C"});
  const Event& A = abc[0];
  const Event& B = abc[1];
  const Event& C = abc[2];

  // CM: {C|A, B|A} entails C|AB.
  CHECK(p_entails(fam({ConditionalEvent(C, A), ConditionalEvent(B, A)}),
                  ConditionalEvent(C, A && B))
            .entails);
  // Cut: {C|AB, B|A} entails C|A.
  CHECK(p_entails(fam({ConditionalEvent(C, A && B), ConditionalEvent(B, A)}),
                  ConditionalEvent(C, A))
            .entails);
  // Or: {C|A, C|B} entails C|(A or B).
  CHECK(p_entails(fam({ConditionalEvent(C, A), ConditionalEvent(C, B)}),
                  ConditionalEvent(C, A || B))
            .entails);
  // Transitivity fails.
  CHECK_FALSE(p_entails(fam({ConditionalEvent(C, B), ConditionalEvent(B, A)}),
                        ConditionalEvent(C, A))
                  .entails);
  // Monotonicity fails.
  CHECK_FALSE(
      p_entails(fam({ConditionalEvent(C, A)}), ConditionalEvent(C, A && B)).entails);
  // Contraposition fails.
  CHECK_FALSE(p_entails(fam({ConditionalEvent(C, A)}), ConditionalEvent(!A, !C)).entails);
  // Or-to-if fails.
  CHECK_FALSE(p_entails(fam({ConditionalEvent(A || B, abc.top())}), ConditionalEvent(B, !A))
                  .entails);
}

TEST_CASE("single-premise p-entailment matches inclusion or a trivial conclusion") {
  Atoms abc({"A", "B", "C"});
  const auto pool = crq::testing::literal_conditionals(abc);
  for (const auto& premise : pool) {
    if (!p_consistent(fam({premise}))) continue;
    for (const auto& conclusion : pool) {
      const bool expected = gn_implies(premise, conclusion) ||
                            implies(conclusion.antecedent(), conclusion.consequent());
      CHECK(p_entails(fam({premise}), conclusion).entails == expected);
    }
  }
}

TEST_CASE("converse of the deduction theorem") {
  Atoms ab({"A", "B"});
  const Event& A = ab[0];
  const Event& B = ab[1];

  SUBCASE("modus ponens") {
    const auto report = converse_check(fam({ConditionalEvent(B, A)}), A, B);
    CHECK(report.premise_entails);
    CHECK(report.applicable);
    CHECK(report.conclusion_holds);
  }
  SUBCASE("not applicable when adding A breaks p-consistency") {
    const auto report = converse_check(fam({ConditionalEvent(!A, ab.top())}), A, A);
    CHECK(report.premise_entails);  // A|A is trivially entailed
    CHECK_FALSE(report.applicable);
  }
  SUBCASE("disjunctive syllogism") {
    const auto gamma = fam({ConditionalEvent(A || B, ab.top()), ConditionalEvent(!A, ab.top())});
    const auto report = converse_check(gamma, !A, B);
    CHECK(report.premise_entails);
    CHECK(report.applicable);
    CHECK(report.conclusion_holds);
  }
}

TEST_CASE("probabilistic deduction theorem") {
  Atoms abc({"A", "B", "C"});
  const Event& A = abc[0];
  const Event& B = abc[1];
  const Event& C = abc[2];

  SUBCASE("modus ponens and transitivity: Gamma' = {C|B, B|A, A}") {
    const auto gamma = fam({ConditionalEvent(C, B), ConditionalEvent(B, A),
                            ConditionalEvent(A, abc.top())});
    const auto report = deduction_theorem(gamma, A, C);
    CHECK(report.applicable);
    REQUIRE(report.conclusions.size() == 3);
    CHECK(report.conclusions[0].verified);  // C|A
    CHECK(report.conclusions[1].verified);  // A|C
    CHECK(report.conclusions[2].verified);  // AC|(A or C)
  }
  SUBCASE("contraposition recovered: {C|A, ~C} entails ~A|~C") {
    const auto gamma = fam({ConditionalEvent(C, A), ConditionalEvent(!C, abc.top())});
    const auto report = deduction_theorem(gamma, !C, !A);
    CHECK(report.applicable);
    CHECK(p_entails(gamma, ConditionalEvent(!A, !C)).entails);
  }
  SUBCASE("or-to-if: the hypothesis Gamma p-entails ~A fails") {
    const auto gamma = fam({ConditionalEvent(A || B, abc.top())});
    const auto report = deduction_theorem(gamma, !A, B);
    CHECK_FALSE(report.applicable);
    REQUIRE(report.hypotheses.size() >= 2);
    CHECK(report.hypotheses[0].holds);        // consistency
    CHECK_FALSE(report.hypotheses[1].holds);  // Gamma p-entails ~A
    CHECK(report.conclusions.empty());
  }
  SUBCASE("combining evidence: {C|B, C|A, AB}") {
    const auto gamma = fam({ConditionalEvent(C, B), ConditionalEvent(C, A),
                            ConditionalEvent(A && B, abc.top())});
    const auto report = deduction_theorem(gamma, A && B, C);
    CHECK(report.applicable);
    CHECK(p_entails(gamma, ConditionalEvent(C, A && B)).entails);
    CHECK(p_entails(gamma, ConditionalEvent(A && B, C)).entails);
  }
  SUBCASE("weak monotonicity: {C|A, AB}") {
    const auto gamma = fam({ConditionalEvent(C, A), ConditionalEvent(A && B, abc.top())});
    const auto report = deduction_theorem(gamma, A && B, C);
    CHECK(report.applicable);
    CHECK(p_entails(gamma, ConditionalEvent(C, A && B)).entails);
  }
  SUBCASE("impossible events are rejected") {
    const auto gamma = fam({ConditionalEvent(C, A)});
    CHECK_THROWS_AS(deduction_theorem(gamma, A && !A, C), DomainError);
  }
}

TEST_CASE("role exchange symmetry of the deduction hypotheses") {
  Atoms abc({"A", "B", "C"});
  const auto pool = crq::testing::literal_conditionals(abc);
  std::mt19937 rng(2718);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

  int applicable_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto gamma = fam({pool[pick(rng)], pool[pick(rng)]});
    const Event a = pool[pick(rng)].consequent();
    const Event b = pool[pick(rng)].consequent();
    if (!a.is_satisfiable() || !b.is_satisfiable()) continue;
    if (!p_consistent(gamma)) continue;

    const PdtReport forward = deduction_theorem(gamma, a, b);
    if (forward.applicable) {
      const PdtReport backward = deduction_theorem(gamma, b, a);
      CHECK(backward.applicable);
      ++applicable_seen;
    }
  }
  CHECK(applicable_seen > 0);
}

TEST_CASE("generalized probabilistic deduction theorem") {
  Atoms abc({"A", "B", "C"});
  const Event& A = abc[0];
  const Event& B = abc[1];
  const Event& C = abc[2];

  SUBCASE("self-entailment gives prevision 1") {
    Atoms ah({"A", "H"});
    const ConditionalEvent c(ah[0], ah[1]);
    const auto report = deduction_theorem_generalized(fam({c}), c, c);
    CHECK(report.applicable);
    for (const auto& conclusion : report.conclusions) CHECK(conclusion.verified);
  }
  SUBCASE("Cut cannot be reached through the event-deduction route") {
    const auto gamma = fam({ConditionalEvent(C, A && B), ConditionalEvent(B, A)});
    const auto report = deduction_theorem_generalized(
        gamma, ConditionalEvent(A, abc.top()), ConditionalEvent(C, abc.top()));
    CHECK_FALSE(report.applicable);
    CHECK_FALSE(report.hypotheses[1].holds);  // Gamma does not p-entail A
  }
  SUBCASE("reduction case: {B|A, A|(A or B)} and the biconditional-style conclusion") {
    const auto gamma = fam({ConditionalEvent(B, A), ConditionalEvent(A, A || B)});
    const auto report =
        deduction_theorem_generalized(gamma, ConditionalEvent(B, A), ConditionalEvent(A, A || B));
    CHECK(report.applicable);
    const auto reduced = reduce_pair_special(ConditionalEvent(B, A), ConditionalEvent(A, A || B));
    REQUIRE(reduced.has_value());
    CHECK(p_entails(gamma, *reduced).entails);
  }
}

TEST_CASE("weak deduction theorems") {
  Atoms abc({"A", "B", "C"});
  const Event& A = abc[0];
  const Event& B = abc[1];
  const Event& C = abc[2];

  SUBCASE("weak transitivity with H* = B") {
    const auto gamma = fam({ConditionalEvent(C, B), ConditionalEvent(B, A),
                            ConditionalEvent(A, A || B)});
    const auto report = weak_deduction(gamma, A, C, B, WeakPdtMode::Asymmetric);
    CHECK(report.applicable);
    REQUIRE(report.conclusions.size() == 1);
    CHECK(report.conclusions[0].verified);  // C|A
  }
  SUBCASE("CM via the substitution A -> AB, B -> C, H* -> A") {
    const auto gamma = fam({ConditionalEvent(C, A), ConditionalEvent(B, A)});
    const auto report = weak_deduction(gamma, A && B, C, A, WeakPdtMode::Asymmetric);
    CHECK(report.applicable);
    REQUIRE(report.conclusions.size() == 1);
    CHECK(report.conclusions[0].verified);  // C|AB
  }
  SUBCASE("symmetric weak transitivity with H* impossible") {
    const auto gamma = fam({ConditionalEvent(C, B), ConditionalEvent(B, A),
                            ConditionalEvent(A, A || C)});
    const auto report = weak_deduction(gamma, A, C, abc.bottom(), WeakPdtMode::Symmetric);
    CHECK(report.applicable);
    REQUIRE(report.conclusions.size() == 2);
    CHECK(report.conclusions[0].verified);  // C|A
    CHECK(report.conclusions[1].verified);  // A|C
  }
}

TEST_CASE("General Import-Export principle") {
  Atoms abc({"A", "B", "C"});
  const Event& A = abc[0];
  const Event& B = abc[1];
  const Event& C = abc[2];

  SUBCASE("CM rule: satisfied with both sides 1") {
    const auto report = general_import_export(
        fam({ConditionalEvent(C, A), ConditionalEvent(B, A)}), ConditionalEvent(C, A && B));
    CHECK(report.satisfied);
    CHECK(*report.left_mu == Rat(1));
    CHECK(*report.right_mu == Rat(1));
  }
  SUBCASE("Cut rule: satisfied") {
    const auto report = general_import_export(
        fam({ConditionalEvent(C, A && B), ConditionalEvent(B, A)}), ConditionalEvent(C, A));
    CHECK(report.satisfied);
  }
  SUBCASE("Or rule: satisfied") {
    const auto report = general_import_export(
        fam({ConditionalEvent(C, A), ConditionalEvent(C, B)}), ConditionalEvent(C, A || B));
    CHECK(report.satisfied);
  }
  SUBCASE("or-to-if: not established, left free below 1, right pinned to 1") {
    const auto report = general_import_export(fam({ConditionalEvent(A || B, abc.top())}),
                                              ConditionalEvent(B, !A));
    CHECK_FALSE(report.satisfied);
    CHECK_FALSE(report.entails);
    REQUIRE(report.left_range.has_value());
    CHECK(report.left_range->lo < 1);
    REQUIRE(report.right_range.has_value());
    CHECK(report.right_range->lo == Rat(1));
    CHECK(report.right_range->hi == Rat(1));
  }
}

TEST_CASE("compatibility taxonomy") {
  Atoms abc({"A", "B", "C"});
  const Event& A = abc[0];
  const Event& B = abc[1];
  const Event& C = abc[2];

  SUBCASE("a.1: {A} vs ~A") {
    CHECK(classify_case(fam({ConditionalEvent(A, abc.top())}),
                        ConditionalEvent(!A, abc.top())) == CaseLabel::A1);
  }
  SUBCASE("a.2: {AB|(A or B)} vs (~A or ~B)|A~B") {
    CHECK(classify_case(fam({ConditionalEvent(A && B, A || B)}),
                        ConditionalEvent(!A || !B, A && !B)) == CaseLabel::A2);
  }
  SUBCASE("b.3: CM") {
    CHECK(classify_case(fam({ConditionalEvent(C, A), ConditionalEvent(B, A)}),
                        ConditionalEvent(C, A && B)) == CaseLabel::B3);
  }
  SUBCASE("b.2: transitivity") {
    CHECK(classify_case(fam({ConditionalEvent(C, B), ConditionalEvent(B, A)}),
                        ConditionalEvent(C, A)) == CaseLabel::B2);
  }
  SUBCASE("b.1: fully independent") {
    Atoms six({"E1", "H1", "E2", "H2", "E", "H"});
    CHECK(classify_case(fam({ConditionalEvent(six[0], six[1]), ConditionalEvent(six[2], six[3])}),
                        ConditionalEvent(six[4], six[5])) == CaseLabel::B1);
  }
  SUBCASE("string labels") {
    CHECK(to_string(CaseLabel::A1) == "a.1");
    CHECK(to_string(CaseLabel::B3) == "b.3");
  }
}

TEST_CASE("a grounded chain of conditionals entails every pairwise conditional") {
  Atoms abcd({"A1", "A2", "A3", "A4"});
  std::vector<ConditionalEvent> gamma{ConditionalEvent(abcd[0], abcd.top()),
                                      ConditionalEvent(abcd[1], abcd[0]),
                                      ConditionalEvent(abcd[2], abcd[1]),
                                      ConditionalEvent(abcd[3], abcd[2])};
  REQUIRE(p_consistent(gamma));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(p_entails(gamma, ConditionalEvent(abcd[i], abcd[j])).entails);
    }
  }
}

TEST_CASE("p-entailment is monotone in the premise family") {
  Atoms abcd({"A", "B", "C", "D"});
  const Event& A = abcd[0];
  const Event& B = abcd[1];
  const Event& C = abcd[2];
  const Event& D = abcd[3];
  // The weak-transitivity core plus an unrelated premise still entails C|A.
  std::vector<ConditionalEvent> fam{ConditionalEvent(C, B), ConditionalEvent(B, A),
                                    ConditionalEvent(A, A || B), ConditionalEvent(D, !A)};
  REQUIRE(p_consistent(fam));
  CHECK(p_entails(fam, ConditionalEvent(C, A)).entails);
}

TEST_CASE("inclusion implies p-entailment on the literal pool") {
  Atoms abc({"A", "B", "C"});
  const auto pool = crq::testing::literal_conditionals(abc);
  for (const auto& premise : pool) {
    if (!p_consistent(fam({premise}))) continue;
    for (const auto& conclusion : pool) {
      if (gn_implies(premise, conclusion)) {
        CHECK(p_entails(fam({premise}), conclusion).entails);
      }
    }
  }
}

TEST_CASE("dual characterizations agree on random small instances") {
  Atoms abc({"A", "B", "C"});
  std::mt19937 rng(60601);

  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<ConditionalEvent> premises;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) premises.push_back(crq::testing::random_conditional(abc, rng));
    if (!p_consistent(premises)) continue;
    const ConditionalEvent conclusion = crq::testing::random_conditional(abc, rng);
    // CrossOracle::Run rechecks Theorem-2 agreement internally and throws on
    // a mismatch, so a clean pass is the assertion.
    CHECK_NOTHROW(p_entails(premises, conclusion, CrossOracle::Run));
    ++checked;
  }
  CHECK(checked > 30);
}
