#include "crq/script.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace crq {

namespace {

const std::map<std::string, QuerySpec::Kind>& query_kinds() {
  static const std::map<std::string, QuerySpec::Kind> kinds = {
      {"coherent", QuerySpec::Kind::Coherent},
      {"extend", QuerySpec::Kind::Extend},
      {"pconsistent", QuerySpec::Kind::PConsistent},
      {"pentails", QuerySpec::Kind::PEntails},
      {"valid", QuerySpec::Kind::Valid},
      {"pdt", QuerySpec::Kind::Pdt},
      {"pdt-gen", QuerySpec::Kind::PdtGen},
      {"pdt-weak", QuerySpec::Kind::PdtWeak},
      {"gie", QuerySpec::Kind::Gie},
      {"classify", QuerySpec::Kind::Classify},
      {"conj-table", QuerySpec::Kind::ConjTable},
      {"iterated-prevision", QuerySpec::Kind::IteratedPrevision},
      {"frechet", QuerySpec::Kind::Frechet},
      {"biconditional", QuerySpec::Kind::Biconditional},
  };
  return kinds;
}

bool is_reserved(const std::string& word) {
  static const std::vector<std::string> reserved = {"atoms", "event", "cond",   "assess",
                                                    "prev",  "query", "given",  "target",
                                                    "hstar", "T",     "F"};
  for (const auto& r : reserved) {
    if (word == r) return true;
  }
  return false;
}

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    current_.pos = pos_;
    if (index_ >= text_.size()) {
      current_ = Token{Token::Kind::End, "", pos_};
      return;
    }
    const char c = text_[index_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (index_ < text_.size()) {
        const char d = text_[index_];
        const bool dash_join = d == '-' && index_ + 1 < text_.size() &&
                               std::isalpha(static_cast<unsigned char>(text_[index_ + 1]));
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || dash_join) {
          word += d;
          step();
        } else {
          break;
        }
      }
      current_ = Token{Token::Kind::Ident, word, current_.pos};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string number;
      while (index_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[index_])) || text_[index_] == '/')) {
        number += text_[index_];
        step();
      }
      current_ = Token{Token::Kind::Number, number, current_.pos};
      return;
    }
    // Two-character symbols first.
    if (c == ':' && index_ + 1 < text_.size() && text_[index_ + 1] == '=') {
      step();
      step();
      current_ = Token{Token::Kind::Symbol, ":=", current_.pos};
      return;
    }
    if (c == '=' && index_ + 1 < text_.size() && text_[index_ + 1] == '>') {
      step();
      step();
      current_ = Token{Token::Kind::Symbol, "=>", current_.pos};
      return;
    }
    step();
    current_ = Token{Token::Kind::Symbol, std::string(1, c), current_.pos};
  }

  void skip_space() {
    while (index_ < text_.size()) {
      const char c = text_[index_];
      if (c == '#') {
        while (index_ < text_.size() && text_[index_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
  }

  void step() {
    if (text_[index_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++index_;
  }

  const std::string& text_;
  std::size_t index_ = 0;
  SourcePos pos_{1, 1};
  Token current_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) {}

  Script parse() {
    Script script;
    while (lexer_.peek().kind != Token::Kind::End) {
      script.statements.push_back(statement());
    }
    return script;
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) {
    throw ParseError(lexer_.peek().pos, message, std::move(expected));
  }

  Token expect_ident(const std::string& what) {
    if (lexer_.peek().kind != Token::Kind::Ident) fail("expected " + what, {what});
    return lexer_.take();
  }

  std::string expect_name(const std::string& what) {
    const Token t = expect_ident(what);
    if (is_reserved(t.text)) {
      throw ParseError(t.pos, "'" + t.text + "' is a reserved word", {what});
    }
    return t.text;
  }

  void expect_symbol(const std::string& s) {
    if (lexer_.peek().kind != Token::Kind::Symbol || lexer_.peek().text != s) {
      fail("expected '" + s + "'", {s});
    }
    lexer_.take();
  }

  bool take_symbol(const std::string& s) {
    if (lexer_.peek().kind == Token::Kind::Symbol && lexer_.peek().text == s) {
      lexer_.take();
      return true;
    }
    return false;
  }

  bool peek_ident(const std::string& word) const {
    return lexer_.peek().kind == Token::Kind::Ident && lexer_.peek().text == word;
  }

  Rat expect_rational() {
    if (lexer_.peek().kind != Token::Kind::Number) fail("expected rational", {"rational"});
    const Token t = lexer_.take();
    const auto value = parse_rational(t.text);
    if (!value) throw ParseError(t.pos, "malformed rational '" + t.text + "'", {"rational"});
    return *value;
  }

  Rat expect_unit_rational() {
    const SourcePos pos = lexer_.peek().pos;
    Rat value = expect_rational();
    if (!in_unit_interval(value)) {
      throw ParseError(pos, "value " + to_fraction(value) + " outside [0,1]", {"rational in [0,1]"});
    }
    return value;
  }

  Formula formula() { return or_formula(); }

  Formula or_formula() {
    Formula f = and_formula();
    while (take_symbol("|")) f = Formula::disjunction(std::move(f), and_formula());
    return f;
  }

  Formula and_formula() {
    Formula f = unary_formula();
    while (take_symbol("&")) f = Formula::conjunction(std::move(f), unary_formula());
    return f;
  }

  Formula unary_formula() {
    if (take_symbol("~")) return Formula::negation(unary_formula());
    if (take_symbol("(")) {
      Formula f = formula();
      expect_symbol(")");
      return f;
    }
    if (lexer_.peek().kind == Token::Kind::Ident) {
      const Token t = lexer_.take();
      if (t.text == "T") return Formula::constant(true);
      if (t.text == "F") return Formula::constant(false);
      if (is_reserved(t.text)) {
        throw ParseError(t.pos, "'" + t.text + "' is a reserved word", {"atom or event name"});
      }
      return Formula::named(t.text);
    }
    fail("expected formula", {"~", "(", "T", "F", "name"});
  }

  CondRef cond_ref() {
    CondRef ref;
    ref.pos = lexer_.peek().pos;
    if (lexer_.peek().kind == Token::Kind::Ident) {
      ref.name = expect_name("conditional name");
      return ref;
    }
    expect_symbol("(");
    ref.consequent = formula();
    if (peek_ident("given")) {
      lexer_.take();
      ref.antecedent = formula();
    }
    expect_symbol(")");
    return ref;
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> names;
    expect_symbol("{");
    if (!take_symbol("}")) {
      names.push_back(expect_name("name"));
      while (take_symbol(",")) names.push_back(expect_name("name"));
      expect_symbol("}");
    }
    return names;
  }

  std::vector<std::pair<std::string, Rat>> assignment_block() {
    std::vector<std::pair<std::string, Rat>> out;
    expect_symbol("{");
    if (!take_symbol("}")) {
      do {
        std::string name = expect_name("name");
        expect_symbol("=");
        out.emplace_back(std::move(name), expect_unit_rational());
      } while (take_symbol(","));
      expect_symbol("}");
    }
    return out;
  }

  Statement statement() {
    const Token head = expect_ident("statement keyword");
    Statement s;
    s.pos = head.pos;
    if (head.text == "atoms") {
      s.kind = Statement::Kind::Atoms;
      s.atom_names.push_back(expect_name("atom name"));
      while (lexer_.peek().kind == Token::Kind::Ident && !is_reserved(lexer_.peek().text)) {
        s.atom_names.push_back(expect_name("atom name"));
      }
      return s;
    }
    if (head.text == "event") {
      s.kind = Statement::Kind::EventDef;
      s.name = expect_name("event name");
      expect_symbol(":=");
      s.consequent = formula();
      return s;
    }
    if (head.text == "cond") {
      s.kind = Statement::Kind::CondDef;
      s.name = expect_name("conditional name");
      expect_symbol(":=");
      s.consequent = formula();
      if (!peek_ident("given")) fail("expected 'given'", {"given"});
      lexer_.take();
      s.antecedent = formula();
      return s;
    }
    if (head.text == "assess") {
      s.kind = Statement::Kind::Assess;
      s.name = expect_name("assessed name");
      expect_symbol("=");
      s.value = expect_unit_rational();
      return s;
    }
    if (head.text == "prev") {
      s.kind = Statement::Kind::Prev;
      s.prev_names = name_list();
      if (s.prev_names.empty()) {
        throw ParseError(s.pos, "prevision subset must be nonempty", {"name"});
      }
      expect_symbol("=");
      s.value = expect_unit_rational();
      return s;
    }
    if (head.text == "query") {
      s.kind = Statement::Kind::Query;
      s.query = query();
      return s;
    }
    throw ParseError(head.pos, "unknown statement '" + head.text + "'",
                     {"atoms", "event", "cond", "assess", "prev", "query"});
  }

  QuerySpec query() {
    const Token head = expect_ident("query kind");
    const auto it = query_kinds().find(head.text);
    if (it == query_kinds().end()) {
      std::vector<std::string> expected;
      for (const auto& [name, kind] : query_kinds()) expected.push_back(name);
      throw ParseError(head.pos, "unknown query '" + head.text + "'", std::move(expected));
    }
    QuerySpec q;
    q.kind = it->second;
    q.pos = head.pos;

    switch (q.kind) {
      case QuerySpec::Kind::Coherent:
        q.assignments = assignment_block();
        break;
      case QuerySpec::Kind::Extend: {
        q.assignments = assignment_block();
        if (!peek_ident("target")) fail("expected 'target'", {"target"});
        lexer_.take();
        q.refs.push_back(cond_ref());
        break;
      }
      case QuerySpec::Kind::PConsistent:
      case QuerySpec::Kind::ConjTable:
        q.names = name_list();
        break;
      case QuerySpec::Kind::PEntails:
      case QuerySpec::Kind::Gie:
      case QuerySpec::Kind::Classify:
      case QuerySpec::Kind::IteratedPrevision:
        q.names = name_list();
        expect_symbol("=>");
        q.refs.push_back(cond_ref());
        break;
      case QuerySpec::Kind::Valid: {
        const Token mode = expect_ident("validity mode");
        const bool star = take_symbol("*");
        if (mode.text == "SS" && !star) {
          q.mode = ValidityMode::SS;
        } else if (mode.text == "TT" && !star) {
          q.mode = ValidityMode::TT;
        } else if (mode.text == "SSTT" && !star) {
          q.mode = ValidityMode::SS_AND_TT;
        } else if (mode.text == "SSTT" && star) {
          q.mode = ValidityMode::SS_AND_TT_STAR;
        } else {
          throw ParseError(mode.pos, "unknown validity mode '" + mode.text + "'",
                           {"SS", "TT", "SSTT", "SSTT*"});
        }
        q.names = name_list();
        expect_symbol("=>");
        q.refs.push_back(cond_ref());
        break;
      }
      case QuerySpec::Kind::Pdt:
      case QuerySpec::Kind::PdtGen:
        q.names = name_list();
        expect_symbol("=>");
        q.refs.push_back(cond_ref());
        q.refs.push_back(cond_ref());
        break;
      case QuerySpec::Kind::PdtWeak: {
        const Token mode = expect_ident("weak mode");
        if (mode.text == "asymmetric") {
          q.weak_mode = WeakPdtMode::Asymmetric;
        } else if (mode.text == "symmetric") {
          q.weak_mode = WeakPdtMode::Symmetric;
        } else {
          throw ParseError(mode.pos, "unknown weak mode '" + mode.text + "'",
                           {"asymmetric", "symmetric"});
        }
        q.names = name_list();
        expect_symbol("=>");
        q.refs.push_back(cond_ref());
        q.refs.push_back(cond_ref());
        if (!peek_ident("hstar")) fail("expected 'hstar'", {"hstar"});
        lexer_.take();
        q.refs.push_back(cond_ref());
        break;
      }
      case QuerySpec::Kind::Frechet:
        q.rationals.push_back(expect_unit_rational());
        while (lexer_.peek().kind == Token::Kind::Number) {
          q.rationals.push_back(expect_unit_rational());
        }
        break;
      case QuerySpec::Kind::Biconditional:
        q.rationals.push_back(expect_unit_rational());
        q.rationals.push_back(expect_unit_rational());
        break;
    }
    return q;
  }

  Lexer lexer_;
};

int precedence(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::Or:
      return 1;
    case Formula::Kind::And:
      return 2;
    default:
      return 3;
  }
}

// Right operands of equal precedence keep their parentheses so rendering and
// reparsing reproduce the same tree.
std::string render_formula_prec(const Formula& f, int parent, bool right_side) {
  const int prec = precedence(f.kind);
  std::string body;
  switch (f.kind) {
    case Formula::Kind::True:
      return "T";
    case Formula::Kind::False:
      return "F";
    case Formula::Kind::Name:
      return f.name;
    case Formula::Kind::Not:
      return "~" + render_formula_prec(*f.left, 3, false);
    case Formula::Kind::And:
      body = render_formula_prec(*f.left, 2, false) + " & " +
             render_formula_prec(*f.right, 2, true);
      break;
    case Formula::Kind::Or:
      body = render_formula_prec(*f.left, 1, false) + " | " +
             render_formula_prec(*f.right, 1, true);
      break;
  }
  if (prec < parent || (prec == parent && right_side)) return "(" + body + ")";
  return body;
}

std::string render_cond_ref(const CondRef& ref) {
  if (ref.name) return *ref.name;
  std::string s = "(" + render_formula(*ref.consequent);
  if (ref.antecedent) s += " given " + render_formula(*ref.antecedent);
  return s + ")";
}

std::string render_name_list(const std::vector<std::string>& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) s += ", ";
    s += names[i];
  }
  return s + "}";
}

}  // namespace

ParseError::ParseError(SourcePos position, const std::string& message,
                       std::vector<std::string> expected_tokens)
    : std::runtime_error("line " + std::to_string(position.line) + ", column " +
                         std::to_string(position.column) + ": " + message),
      pos(position),
      expected(std::move(expected_tokens)) {}

Formula Formula::constant(bool value) {
  Formula f;
  f.kind = value ? Kind::True : Kind::False;
  return f;
}

Formula Formula::named(std::string n) {
  Formula f;
  f.kind = Kind::Name;
  f.name = std::move(n);
  return f;
}

Formula Formula::negation(Formula inner) {
  Formula f;
  f.kind = Kind::Not;
  f.left = std::make_shared<Formula>(std::move(inner));
  return f;
}

Formula Formula::conjunction(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::And;
  f.left = std::make_shared<Formula>(std::move(a));
  f.right = std::make_shared<Formula>(std::move(b));
  return f;
}

Formula Formula::disjunction(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::Or;
  f.left = std::make_shared<Formula>(std::move(a));
  f.right = std::make_shared<Formula>(std::move(b));
  return f;
}

std::string render_formula(const Formula& f) {
  return render_formula_prec(f, 0, false);
}

namespace {

// Name/scoping validation: atoms precede definitions and are never
// redeclared, every referenced name is defined before use, and names are
// unique. Violations are parse errors with the offending position.
class ScriptChecker {
 public:
  void check(const Script& script) {
    for (const Statement& s : script.statements) statement(s);
  }

 private:
  [[noreturn]] static void fail(SourcePos pos, const std::string& message) {
    throw ParseError(pos, message, {});
  }

  bool known(const std::string& name) const {
    return atoms_.count(name) || events_.count(name) || conds_.count(name);
  }

  void formula(const Formula& f, SourcePos pos) {
    switch (f.kind) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return;
      case Formula::Kind::Name:
        if (conds_.count(f.name)) {
          fail(pos, "'" + f.name + "' names a conditional and cannot appear in a formula");
        }
        if (!atoms_.count(f.name) && !events_.count(f.name)) {
          fail(pos, "undefined name '" + f.name + "'");
        }
        return;
      case Formula::Kind::Not:
        formula(*f.left, pos);
        return;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        formula(*f.left, pos);
        formula(*f.right, pos);
        return;
    }
  }

  void cond_ref(const CondRef& ref) {
    if (ref.name) {
      if (!known(*ref.name)) fail(ref.pos, "undefined name '" + *ref.name + "'");
      return;
    }
    // "(c)" with c a defined conditional reads as a name reference.
    if (!ref.antecedent && ref.consequent->kind == Formula::Kind::Name &&
        conds_.count(ref.consequent->name)) {
      return;
    }
    formula(*ref.consequent, ref.pos);
    if (ref.antecedent) formula(*ref.antecedent, ref.pos);
  }

  void statement(const Statement& s) {
    switch (s.kind) {
      case Statement::Kind::Atoms:
        if (have_definitions_) fail(s.pos, "atoms must be declared before any definition");
        for (const auto& name : s.atom_names) {
          if (atoms_.count(name)) fail(s.pos, "atom '" + name + "' redeclared");
          atoms_.insert(name);
        }
        return;
      case Statement::Kind::EventDef:
        have_definitions_ = true;
        if (known(s.name)) fail(s.pos, "name '" + s.name + "' already defined");
        formula(*s.consequent, s.pos);
        events_.insert(s.name);
        return;
      case Statement::Kind::CondDef:
        have_definitions_ = true;
        if (known(s.name)) fail(s.pos, "name '" + s.name + "' already defined");
        formula(*s.consequent, s.pos);
        formula(*s.antecedent, s.pos);
        conds_.insert(s.name);
        return;
      case Statement::Kind::Assess:
        have_definitions_ = true;
        if (!known(s.name)) fail(s.pos, "undefined name '" + s.name + "'");
        return;
      case Statement::Kind::Prev:
        have_definitions_ = true;
        for (const auto& name : s.prev_names) {
          if (!known(name)) fail(s.pos, "undefined name '" + name + "'");
        }
        return;
      case Statement::Kind::Query: {
        have_definitions_ = true;
        const QuerySpec& q = *s.query;
        for (const auto& [name, value] : q.assignments) {
          if (!known(name)) fail(q.pos, "undefined name '" + name + "'");
        }
        for (const auto& name : q.names) {
          if (!known(name)) fail(q.pos, "undefined name '" + name + "'");
        }
        for (const auto& ref : q.refs) cond_ref(ref);
        return;
      }
    }
  }

  std::set<std::string> atoms_, events_, conds_;
  bool have_definitions_ = false;
};

}  // namespace

Script parse_script(const std::string& text) {
  Script script = Parser(text).parse();
  ScriptChecker().check(script);
  return script;
}

std::string render_query(const QuerySpec& q) {
  std::ostringstream out;
  switch (q.kind) {
    case QuerySpec::Kind::Coherent:
    case QuerySpec::Kind::Extend: {
      out << (q.kind == QuerySpec::Kind::Coherent ? "coherent {" : "extend {");
      for (std::size_t i = 0; i < q.assignments.size(); ++i) {
        if (i > 0) out << ", ";
        out << q.assignments[i].first << " = " << to_fraction(q.assignments[i].second);
      }
      out << "}";
      if (q.kind == QuerySpec::Kind::Extend) out << " target " << render_cond_ref(q.refs[0]);
      break;
    }
    case QuerySpec::Kind::PConsistent:
      out << "pconsistent " << render_name_list(q.names);
      break;
    case QuerySpec::Kind::ConjTable:
      out << "conj-table " << render_name_list(q.names);
      break;
    case QuerySpec::Kind::PEntails:
      out << "pentails " << render_name_list(q.names) << " => " << render_cond_ref(q.refs[0]);
      break;
    case QuerySpec::Kind::Gie:
      out << "gie " << render_name_list(q.names) << " => " << render_cond_ref(q.refs[0]);
      break;
    case QuerySpec::Kind::Classify:
      out << "classify " << render_name_list(q.names) << " => " << render_cond_ref(q.refs[0]);
      break;
    case QuerySpec::Kind::IteratedPrevision:
      out << "iterated-prevision " << render_name_list(q.names) << " => "
          << render_cond_ref(q.refs[0]);
      break;
    case QuerySpec::Kind::Valid: {
      out << "valid ";
      switch (q.mode) {
        case ValidityMode::SS:
          out << "SS";
          break;
        case ValidityMode::TT:
          out << "TT";
          break;
        case ValidityMode::SS_AND_TT:
          out << "SSTT";
          break;
        case ValidityMode::SS_AND_TT_STAR:
          out << "SSTT*";
          break;
      }
      out << " " << render_name_list(q.names) << " => " << render_cond_ref(q.refs[0]);
      break;
    }
    case QuerySpec::Kind::Pdt:
    case QuerySpec::Kind::PdtGen:
      out << (q.kind == QuerySpec::Kind::Pdt ? "pdt " : "pdt-gen ") << render_name_list(q.names)
          << " => " << render_cond_ref(q.refs[0]) << " " << render_cond_ref(q.refs[1]);
      break;
    case QuerySpec::Kind::PdtWeak:
      out << "pdt-weak "
          << (q.weak_mode == WeakPdtMode::Asymmetric ? "asymmetric" : "symmetric") << " "
          << render_name_list(q.names) << " => " << render_cond_ref(q.refs[0]) << " "
          << render_cond_ref(q.refs[1]) << " hstar " << render_cond_ref(q.refs[2]);
      break;
    case QuerySpec::Kind::Frechet:
      out << "frechet";
      for (const Rat& r : q.rationals) out << " " << to_fraction(r);
      break;
    case QuerySpec::Kind::Biconditional:
      out << "biconditional " << to_fraction(q.rationals[0]) << " "
          << to_fraction(q.rationals[1]);
      break;
  }
  return out.str();
}

std::string render_script(const Script& script) {
  std::ostringstream out;
  for (const Statement& s : script.statements) {
    switch (s.kind) {
      case Statement::Kind::Atoms: {
        out << "atoms";
        for (const auto& a : s.atom_names) out << " " << a;
        break;
      }
      case Statement::Kind::EventDef:
        out << "event " << s.name << " := " << render_formula(*s.consequent);
        break;
      case Statement::Kind::CondDef:
        out << "cond " << s.name << " := " << render_formula(*s.consequent) << " given "
            << render_formula(*s.antecedent);
        break;
      case Statement::Kind::Assess:
        out << "assess " << s.name << " = " << to_fraction(s.value);
        break;
      case Statement::Kind::Prev:
        out << "prev " << render_name_list(s.prev_names) << " = " << to_fraction(s.value);
        break;
      case Statement::Kind::Query:
        out << "query " << render_query(*s.query);
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace crq
