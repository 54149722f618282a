#include "crq/runner.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "crq/coherence.hpp"
#include "crq/entailment.hpp"
#include "crq/tables.hpp"

namespace crq {

namespace {

using nlohmann::ordered_json;

struct Environment {
  RunOptions options;
  std::vector<std::string> atom_names;
  UniversePtr universe;
  std::map<std::string, Event> events;
  std::map<std::string, ConditionalEvent> conds;
  std::map<std::string, Rat> assessed;
  std::map<std::vector<std::string>, Rat> previsions;

  const UniversePtr& need_universe() {
    if (!universe) {
      if (atom_names.empty()) throw DomainError("no atoms declared");
      if (atom_names.size() > options.max_atoms) {
        throw DomainError("universe of " + std::to_string(atom_names.size()) +
                          " atoms exceeds --max-atoms " + std::to_string(options.max_atoms));
      }
      universe = std::make_shared<Universe>(atom_names);
    }
    return universe;
  }

  bool is_atom(const std::string& name) const {
    return std::find(atom_names.begin(), atom_names.end(), name) != atom_names.end();
  }

  Event resolve_formula(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::True:
        return Event::top(need_universe());
      case Formula::Kind::False:
        return Event::bottom(need_universe());
      case Formula::Kind::Name: {
        if (is_atom(f.name)) return Event::atom(need_universe(), f.name);
        const auto it = events.find(f.name);
        if (it != events.end()) return it->second;
        if (conds.count(f.name)) {
          throw DomainError("'" + f.name + "' names a conditional, not an event");
        }
        throw DomainError("undefined name '" + f.name + "'");
      }
      case Formula::Kind::Not:
        return !resolve_formula(*f.left);
      case Formula::Kind::And:
        return resolve_formula(*f.left) && resolve_formula(*f.right);
      case Formula::Kind::Or:
        return resolve_formula(*f.left) || resolve_formula(*f.right);
    }
    throw std::logic_error("unreachable formula kind");
  }

  ConditionalEvent resolve_ref(const CondRef& ref) {
    if (ref.name) {
      const auto cit = conds.find(*ref.name);
      if (cit != conds.end()) return cit->second;
      const auto eit = events.find(*ref.name);
      if (eit != events.end()) {
        return ConditionalEvent(eit->second, Event::top(need_universe()));
      }
      if (is_atom(*ref.name)) {
        return ConditionalEvent(Event::atom(need_universe(), *ref.name),
                                Event::top(need_universe()));
      }
      throw DomainError("undefined name '" + *ref.name + "'");
    }
    if (!ref.antecedent && ref.consequent->kind == Formula::Kind::Name) {
      const auto cit = conds.find(ref.consequent->name);
      if (cit != conds.end()) return cit->second;
    }
    Event consequent = resolve_formula(*ref.consequent);
    Event antecedent =
        ref.antecedent ? resolve_formula(*ref.antecedent) : Event::top(need_universe());
    return ConditionalEvent(std::move(consequent), std::move(antecedent));
  }

  std::vector<ConditionalEvent> resolve_family(const std::vector<std::string>& names) {
    std::vector<ConditionalEvent> fam;
    for (const auto& name : names) {
      CondRef ref;
      ref.name = name;
      fam.push_back(resolve_ref(ref));
    }
    return fam;
  }

  Rat assessed_value(const std::string& name) const {
    const auto it = assessed.find(name);
    if (it == assessed.end()) throw DomainError("no assessment for '" + name + "'");
    return it->second;
  }

  /// Assessed probability of a conditional equivalent to `target`, from any
  /// assessed definition.
  std::optional<Rat> assessed_equivalent(const ConditionalEvent& target) {
    for (const auto& [name, value] : assessed) {
      const auto cit = conds.find(name);
      if (cit != conds.end() && cit->second.equivalent(target)) return value;
      const auto eit = events.find(name);
      if (eit != events.end() &&
          ConditionalEvent(eit->second, Event::top(need_universe())).equivalent(target)) {
        return value;
      }
      if (is_atom(name) &&
          ConditionalEvent(Event::atom(need_universe(), name), Event::top(need_universe()))
              .equivalent(target)) {
        return value;
      }
    }
    return std::nullopt;
  }

  /// Previsions of a (partially named) combined family: singletons from the
  /// assessments, larger subsets from prev statements when all members are
  /// named, and the full-set prevision additionally from the special pair
  /// reduction against assessed conditionals.
  SubsetPrevisions collect_previsions(const std::vector<std::string>& names,
                                      const std::vector<ConditionalEvent>& family,
                                      const std::optional<std::string>& extra_name,
                                      const std::optional<ConditionalEvent>& extra) {
    const std::size_t n = family.size() + (extra ? 1 : 0);
    SubsetPrevisions out;
    for (std::size_t i = 0; i < family.size(); ++i) {
      out.set(std::uint32_t{1} << i, assessed_value(names[i]));
    }
    if (extra) {
      std::optional<Rat> y;
      if (extra_name && assessed.count(*extra_name)) {
        y = assessed.at(*extra_name);
      } else {
        y = assessed_equivalent(*extra);
      }
      if (!y) {
        throw DomainError("no assessment found for the consequent " + extra->to_string());
      }
      out.set(std::uint32_t{1} << family.size(), *y);
    }
    // Named subset previsions.
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
      if (__builtin_popcount(s) < 2) continue;
      std::vector<std::string> key;
      bool nameable = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((s >> i) & 1)) continue;
        if (i < family.size()) {
          key.push_back(names[i]);
        } else if (extra_name) {
          key.push_back(*extra_name);
        } else {
          nameable = false;
        }
      }
      if (!nameable) continue;
      std::sort(key.begin(), key.end());
      const auto it = previsions.find(key);
      if (it != previsions.end()) out.set(s, it->second);
    }
    // Pair reduction: when the two members conjoin to a single conditional
    // event with an assessed equivalent, that value is the pair prevision.
    if (n == 2 && !out.get(3)) {
      std::vector<ConditionalEvent> both = family;
      if (extra) both.push_back(*extra);
      if (const auto reduced = reduce_pair_special(both[0], both[1])) {
        if (const auto value = assessed_equivalent(*reduced)) out.set(3, *value);
      }
    }
    return out;
  }
};

std::string world_string(const Universe& universe, World w) {
  std::string s;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (i > 0) s += " ";
    s += universe.atom_name(i) + "=" + (((w >> i) & 1) ? "1" : "0");
  }
  return s;
}

ordered_json world_json(const Universe& universe, World w) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 0; i < universe.size(); ++i) {
    j[universe.atom_name(i)] = static_cast<bool>((w >> i) & 1);
  }
  return j;
}

ordered_json interval_json(const RatInterval& interval) {
  return ordered_json::array({to_fraction(interval.lo), to_fraction(interval.hi)});
}

std::string interval_string(const RatInterval& interval) {
  return "[" + to_fraction(interval.lo) + ", " + to_fraction(interval.hi) + "]";
}

ordered_json verdict_json(const CoherenceVerdict& verdict) {
  ordered_json j;
  j["coherent"] = verdict.coherent;
  ordered_json layers = ordered_json::array();
  for (const auto& layer : verdict.layers) {
    ordered_json jl;
    jl["indices"] = layer.indices;
    ordered_json lambda = ordered_json::array();
    for (std::size_t h = 0; h < layer.points.size(); ++h) {
      if (layer.lambda[h] == 0) continue;
      ordered_json entry;
      entry["pattern"] = layer.constituents[layer.points[h].constituent].pattern_string();
      entry["weight"] = to_fraction(layer.lambda[h]);
      lambda.push_back(std::move(entry));
    }
    jl["lambda"] = std::move(lambda);
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  if (!verdict.coherent) {
    j["failed_layer"] = verdict.failed_layer;
    j["failure"] = verdict.failure;
  }
  return j;
}

std::string certificate_string(const CoherenceVerdict& verdict) {
  std::ostringstream out;
  out << "lambda =";
  const auto& layer = verdict.layers.front();
  for (std::size_t h = 0; h < layer.points.size(); ++h) {
    if (layer.lambda[h] == 0) continue;
    out << " " << layer.constituents[layer.points[h].constituent].pattern_string() << ":"
        << to_fraction(layer.lambda[h]);
  }
  if (verdict.layers.size() > 1) out << " (+" << verdict.layers.size() - 1 << " deeper layers)";
  return out.str();
}

ordered_json pdt_json(const PdtReport& report) {
  ordered_json j;
  j["applicable"] = report.applicable;
  ordered_json hyps = ordered_json::array();
  for (const auto& h : report.hypotheses) {
    ordered_json jh;
    jh["name"] = h.name;
    jh["holds"] = h.holds;
    hyps.push_back(std::move(jh));
  }
  j["hypotheses"] = std::move(hyps);
  ordered_json conclusions = ordered_json::array();
  for (const auto& c : report.conclusions) {
    ordered_json jc;
    jc["statement"] = c.description;
    jc["verified"] = c.verified;
    conclusions.push_back(std::move(jc));
  }
  j["conclusions"] = std::move(conclusions);
  if (!report.equivalences.empty()) {
    ordered_json eq = ordered_json::array();
    for (const auto& [name, holds] : report.equivalences) {
      ordered_json je;
      je["name"] = name;
      je["holds"] = holds;
      eq.push_back(std::move(je));
    }
    j["equivalences"] = std::move(eq);
  }
  return j;
}

std::string pdt_text(const std::string& label, const PdtReport& report) {
  std::ostringstream out;
  out << label << ": ";
  if (!report.applicable) {
    for (const auto& h : report.hypotheses) {
      if (!h.holds) {
        out << "hypothesis failed (" << h.name << ")";
        return out.str();
      }
    }
    out << "not applicable";
    return out.str();
  }
  out << "certified";
  for (std::size_t i = 0; i < report.conclusions.size(); ++i) {
    out << (i == 0 ? ": " : "; ") << report.conclusions[i].description;
  }
  return out.str();
}

class QueryRunner {
 public:
  QueryRunner(Environment& env) : env_(env) {}

  QueryOutcome run(const QuerySpec& q) {
    QueryOutcome outcome;
    outcome.query = render_query(q);
    try {
      dispatch(q, &outcome);
      outcome.ok = true;
    } catch (const std::exception& error) {
      outcome.ok = false;
      outcome.text = std::string("ERROR: ") + error.what();
      outcome.payload = ordered_json{{"error", error.what()}};
    }
    return outcome;
  }

 private:
  void dispatch(const QuerySpec& q, QueryOutcome* out) {
    switch (q.kind) {
      case QuerySpec::Kind::Coherent:
        return coherent(q, out);
      case QuerySpec::Kind::Extend:
        return extend(q, out);
      case QuerySpec::Kind::PConsistent:
        return pconsistent(q, out);
      case QuerySpec::Kind::PEntails:
        return pentails(q, out);
      case QuerySpec::Kind::Valid:
        return valid(q, out);
      case QuerySpec::Kind::Pdt:
        return pdt(q, out);
      case QuerySpec::Kind::PdtGen:
        return pdt_gen(q, out);
      case QuerySpec::Kind::PdtWeak:
        return pdt_weak(q, out);
      case QuerySpec::Kind::Gie:
        return gie(q, out);
      case QuerySpec::Kind::Classify:
        return classify(q, out);
      case QuerySpec::Kind::ConjTable:
        return conj_table(q, out);
      case QuerySpec::Kind::IteratedPrevision:
        return iterated_prevision(q, out);
      case QuerySpec::Kind::Frechet:
        return frechet(q, out);
      case QuerySpec::Kind::Biconditional:
        return biconditional(q, out);
    }
  }

  Assessment build_assessment(const std::vector<std::pair<std::string, Rat>>& assignments) {
    Assessment a;
    for (const auto& [name, value] : assignments) {
      CondRef ref;
      ref.name = name;
      a.add(env_.resolve_ref(ref), value);
    }
    return a;
  }

  void coherent(const QuerySpec& q, QueryOutcome* out) {
    const Assessment a = build_assessment(q.assignments);
    const CoherenceVerdict verdict = check_coherence(a);
    out->payload = verdict_json(verdict);
    if (verdict.coherent) {
      out->text = "COHERENT (certificate: " + certificate_string(verdict) + ")";
    } else {
      out->text = "INCOHERENT (layer " + std::to_string(verdict.failed_layer) + ": " +
                  verdict.failure + ")";
    }
  }

  void extend(const QuerySpec& q, QueryOutcome* out) {
    const Assessment a = build_assessment(q.assignments);
    const ConditionalEvent target = env_.resolve_ref(q.refs[0]);
    const RatInterval interval = extension_interval(a, target);
    out->payload["target"] = target.to_string();
    out->payload["interval"] = interval_json(interval);
    out->text = "EXTENSION " + interval_string(interval);
  }

  void pconsistent(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const bool ok = p_consistent(fam);
    out->payload["pconsistent"] = ok;
    out->text = std::string("P-CONSISTENT: ") + (ok ? "yes" : "no");
  }

  void pentails(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const ConditionalEvent conclusion = env_.resolve_ref(q.refs[0]);
    const EntailmentVerdict verdict = p_entails(
        fam, conclusion, env_.options.cross_oracle ? CrossOracle::Run : CrossOracle::Skip);
    const bool replayed = replay_witness(verdict, fam, conclusion);

    out->payload["entails"] = verdict.entails;
    ordered_json witness;
    std::ostringstream text;
    text << "P-ENTAILS: " << (verdict.entails ? "yes" : "no");
    switch (verdict.witness) {
      case EntailmentVerdict::Witness::TrivialConclusion:
        witness["type"] = "trivial-conclusion";
        text << " (antecedent implies consequent)";
        break;
      case EntailmentVerdict::Witness::QcSubset: {
        witness["type"] = "qc-subset";
        ordered_json subset = ordered_json::array();
        std::string names;
        for (std::size_t i : verdict.subset) {
          subset.push_back(q.names[i]);
          if (!names.empty()) names += ", ";
          names += q.names[i];
        }
        witness["subset"] = std::move(subset);
        text << " (QC{" << names << "} included in " << conclusion.to_string() << ")";
        break;
      }
      case EntailmentVerdict::Witness::Countermodel: {
        witness["type"] = "countermodel";
        const Rat z = verdict.countermodel->value(verdict.countermodel->size() - 1);
        witness["conclusion_value"] = to_fraction(z);
        text << " (countermodel: premises at 1/1, conclusion at " << to_fraction(z) << ")";
        break;
      }
    }
    witness["replayed"] = replayed;
    out->payload["witness"] = std::move(witness);
    out->text = text.str();
    if (!replayed) throw std::logic_error("entailment witness failed to replay");
  }

  void valid(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const ConditionalEvent conclusion = env_.resolve_ref(q.refs[0]);
    const Verdict verdict = check_validity(q.mode, fam, conclusion);
    std::string mode;
    switch (q.mode) {
      case ValidityMode::SS:
        mode = "SS";
        break;
      case ValidityMode::TT:
        mode = "TT";
        break;
      case ValidityMode::SS_AND_TT:
        mode = "SSTT";
        break;
      case ValidityMode::SS_AND_TT_STAR:
        mode = "SSTT*";
        break;
    }
    out->payload["mode"] = mode;
    out->payload["valid"] = verdict.valid;
    if (verdict.valid) {
      out->text = "VALID " + mode + ": yes";
    } else {
      const Universe& universe = *conclusion.universe();
      out->payload["witness_world"] = world_json(universe, *verdict.witness);
      out->text =
          "VALID " + mode + ": no (witness: " + world_string(universe, *verdict.witness) + ")";
    }
  }

  void pdt(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const Event a = event_argument(q.refs[0], "A");
    const Event b = event_argument(q.refs[1], "B");
    const PdtReport report = deduction_theorem(fam, a, b);
    out->payload = pdt_json(report);
    out->text = pdt_text("PDT", report);
  }

  void pdt_gen(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const PdtReport report = deduction_theorem_generalized(fam, env_.resolve_ref(q.refs[0]),
                                                           env_.resolve_ref(q.refs[1]));
    out->payload = pdt_json(report);
    out->text = pdt_text("PDT-GEN", report);
  }

  void pdt_weak(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const Event a = event_argument(q.refs[0], "A");
    const Event b = event_argument(q.refs[1], "B");
    const Event h_star = event_argument(q.refs[2], "H*");
    const PdtReport report = weak_deduction(fam, a, b, h_star, q.weak_mode);
    out->payload = pdt_json(report);
    out->payload["mode"] =
        q.weak_mode == WeakPdtMode::Asymmetric ? "asymmetric" : "symmetric";
    out->text = pdt_text("PDT-WEAK", report);
  }

  void gie(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const ConditionalEvent conclusion = env_.resolve_ref(q.refs[0]);
    const GieReport report = general_import_export(fam, conclusion);
    out->payload["entails"] = report.entails;
    out->payload["compatible"] = report.compatible;
    out->payload["satisfied"] = report.satisfied;
    out->payload["detail"] = report.detail;
    if (report.left_mu) out->payload["left_mu"] = to_fraction(*report.left_mu);
    if (report.right_mu) out->payload["right_mu"] = to_fraction(*report.right_mu);
    if (report.left_range) out->payload["left_range"] = interval_json(*report.left_range);
    if (report.right_range) out->payload["right_range"] = interval_json(*report.right_range);
    out->text = "GIE: " + report.detail;
  }

  void classify(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const CaseLabel label = classify_case(fam, env_.resolve_ref(q.refs[0]));
    out->payload["case"] = to_string(label);
    out->text = "CASE: " + to_string(label);
  }

  void conj_table(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const SubsetPrevisions previsions =
        env_.collect_previsions(q.names, fam, std::nullopt, std::nullopt);
    const ValueTable table = conjunction_table(fam, previsions);

    ordered_json values = ordered_json::array();
    std::ostringstream text;
    text << "CONJ-TABLE:";
    for (std::size_t h = 0; h < table.values.size(); ++h) {
      ordered_json entry;
      entry["pattern"] = table.table_constituents[h].pattern_string();
      entry["value"] = to_fraction(table.values[h]);
      values.push_back(std::move(entry));
      text << (h == 0 ? " " : ", ") << table.table_constituents[h].pattern_string() << "="
           << to_fraction(table.values[h]);
    }
    out->payload["values"] = std::move(values);
    if (table.prevision) {
      out->payload["prevision"] = to_fraction(*table.prevision);
      text << "; prevision " << to_fraction(*table.prevision);
    }
    out->text = text.str();
  }

  void iterated_prevision(const QuerySpec& q, QueryOutcome* out) {
    const auto fam = env_.resolve_family(q.names);
    const ConditionalEvent consequent = env_.resolve_ref(q.refs[0]);
    std::optional<std::string> cons_name = q.refs[0].name;
    if (!cons_name && !q.refs[0].antecedent &&
        q.refs[0].consequent->kind == Formula::Kind::Name) {
      cons_name = q.refs[0].consequent->name;
    }
    const SubsetPrevisions previsions =
        env_.collect_previsions(q.names, fam, cons_name, consequent);
    const IteratedTable table = iterated_table(consequent, fam, previsions);

    out->payload["consequent"] = consequent.to_string();
    out->payload["point"] = table.mu_is_point;
    if (table.mu_is_point) {
      out->payload["mu"] = to_fraction(table.mu);
      ordered_json values = ordered_json::array();
      for (std::size_t h = 0; h < table.values.size(); ++h) {
        ordered_json entry;
        entry["pattern"] = table.table_constituents[h].pattern_string();
        entry["value"] = to_fraction(table.values[h]);
        values.push_back(std::move(entry));
      }
      out->payload["values"] = std::move(values);
      out->text = "ITERATED-PREVISION: " + to_fraction(table.mu);
    } else {
      out->payload["mu_interval"] = interval_json(table.mu_range);
      out->text = "ITERATED-PREVISION: in " + interval_string(table.mu_range) +
                  " (antecedent prevision 0; interval answer)";
    }
  }

  void frechet(const QuerySpec& q, QueryOutcome* out) {
    const RatInterval interval = frechet_bounds(q.rationals);
    out->payload["interval"] = interval_json(interval);
    out->text = "FRECHET " + interval_string(interval);
  }

  void biconditional(const QuerySpec& q, QueryOutcome* out) {
    const auto [z, mu] = biconditional_values(q.rationals[0], q.rationals[1]);
    out->payload["z"] = to_fraction(z);
    out->payload["mu"] = to_fraction(mu);
    out->text = "BICONDITIONAL z=" + to_fraction(z) + " mu=" + to_fraction(mu);
  }

  Event event_argument(const CondRef& ref, const std::string& label) {
    const ConditionalEvent c = env_.resolve_ref(ref);
    if (!c.is_unconditional()) {
      throw DomainError(label + " must be an unconditional event");
    }
    return c.consequent();
  }

  Environment& env_;
};

}  // namespace

Report run_script(const Script& script, const RunOptions& options) {
  Environment env;
  env.options = options;
  Report report;

  for (const Statement& s : script.statements) {
    switch (s.kind) {
      case Statement::Kind::Atoms:
        env.atom_names.insert(env.atom_names.end(), s.atom_names.begin(), s.atom_names.end());
        break;
      case Statement::Kind::EventDef:
        env.events.emplace(s.name, env.resolve_formula(*s.consequent));
        break;
      case Statement::Kind::CondDef:
        env.conds.emplace(s.name, ConditionalEvent(env.resolve_formula(*s.consequent),
                                                   env.resolve_formula(*s.antecedent)));
        break;
      case Statement::Kind::Assess:
        env.assessed[s.name] = s.value;
        break;
      case Statement::Kind::Prev: {
        std::vector<std::string> key = s.prev_names;
        std::sort(key.begin(), key.end());
        env.previsions[key] = s.value;
        break;
      }
      case Statement::Kind::Query:
        report.results.push_back(QueryRunner(env).run(*s.query));
        break;
    }
  }
  return report;
}

}  // namespace crq
