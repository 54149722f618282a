#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crq/rational.hpp"
#include "crq/trivalent.hpp"
#include "crq/entailment.hpp"

namespace crq {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& message, std::vector<std::string> expected);

  SourcePos pos;
  std::vector<std::string> expected;
};

/// Syntactic formula over atom and event names; resolved against the
/// declared universe when the script runs.
struct Formula {
  enum class Kind { True, False, Name, Not, And, Or };
  Kind kind = Kind::True;
  std::string name;
  std::shared_ptr<const Formula> left, right;

  static Formula constant(bool value);
  static Formula named(std::string n);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
};

std::string render_formula(const Formula& f);

/// A conditional reference: either a defined name or an inline
/// "(consequent given antecedent)" / "(event)" expression.
struct CondRef {
  std::optional<std::string> name;
  std::optional<Formula> consequent;
  std::optional<Formula> antecedent;  // absent: unconditional
  SourcePos pos;
};

struct QuerySpec {
  enum class Kind {
    Coherent,
    Extend,
    PConsistent,
    PEntails,
    Valid,
    Pdt,
    PdtGen,
    PdtWeak,
    Gie,
    Classify,
    ConjTable,
    IteratedPrevision,
    Frechet,
    Biconditional,
  };

  Kind kind = Kind::Coherent;
  std::vector<std::pair<std::string, Rat>> assignments;  // coherent / extend
  std::vector<std::string> names;                        // premise name lists
  std::vector<CondRef> refs;                             // targets, in order
  std::vector<Rat> rationals;                            // frechet / biconditional
  ValidityMode mode = ValidityMode::SS;                  // valid
  WeakPdtMode weak_mode = WeakPdtMode::Asymmetric;       // pdt-weak
  SourcePos pos;
};

struct Statement {
  enum class Kind { Atoms, EventDef, CondDef, Assess, Prev, Query };
  Kind kind = Kind::Atoms;
  SourcePos pos;

  std::vector<std::string> atom_names;    // Atoms
  std::string name;                       // defs / assess
  std::optional<Formula> consequent;      // defs
  std::optional<Formula> antecedent;      // CondDef
  Rat value;                              // assess / prev
  std::vector<std::string> prev_names;    // Prev
  std::optional<QuerySpec> query;         // Query
};

struct Script {
  std::vector<Statement> statements;
};

/// Parses the DSL; throws ParseError with position and expected-token set.
Script parse_script(const std::string& text);

/// Canonical textual rendering; parse(render_script(s)) reproduces s.
std::string render_script(const Script& script);

std::string render_query(const QuerySpec& query);

}  // namespace crq
