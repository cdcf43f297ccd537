#include "wscan/parser.hpp"

#include <cctype>
#include <sstream>

namespace wscan {

namespace {

struct Cursor {
  const std::string* text = nullptr;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text->size(); }
  char peek() const { return done() ? '\0' : (*text)[pos]; }
  char peek2() const { return pos + 1 < text->size() ? (*text)[pos + 1] : '\0'; }
  void advance() {
    if (done()) return;
    if ((*text)[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_space_and_comments(bool stop_at_newline = false) {
    for (;;) {
      char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') advance();
        continue;
      }
      if (c == '\n' && stop_at_newline) return;
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      return;
    }
  }
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

struct Parser {
  Cursor cur;
  ProblemFile out;
  ParseError err;
  bool failed = false;
  // Arities seen for undeclared predicate symbols, to detect conflicts.
  std::map<std::string, int> pred_arity;
  std::map<std::string, int> func_arity;

  explicit Parser(const std::string& text) : cur{&text} {}

  void fail(const std::string& expected) {
    if (failed) return;
    failed = true;
    err = {cur.line, cur.col, expected};
  }

  std::string name() {
    cur.skip_space_and_comments();
    if (!name_start(cur.peek())) {
      fail("identifier");
      return "";
    }
    std::string s;
    while (name_char(cur.peek())) {
      s += cur.peek();
      cur.advance();
    }
    return s;
  }

  bool eat(char c) {
    cur.skip_space_and_comments();
    if (cur.peek() != c) return false;
    cur.advance();
    return true;
  }

  bool eat_keyword(const std::string& kw) {
    cur.skip_space_and_comments();
    Cursor save = cur;
    for (char c : kw) {
      if (cur.peek() != c) {
        cur = save;
        return false;
      }
      cur.advance();
    }
    return true;
  }

  int arity() {
    cur.skip_space_and_comments();
    if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      fail("arity");
      return -1;
    }
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      v = v * 10 + (cur.peek() - '0');
      cur.advance();
    }
    return v;
  }

  void header() {
    if (!eat_keyword("vars:")) {
      fail("'vars:' header");
      return;
    }
    for (;;) {
      std::string n = name();
      if (failed) {
        err.expected = "var_decl";
        return;
      }
      if (!eat('/')) {
        fail("'/' and arity in var_decl");
        return;
      }
      int a = arity();
      if (failed) return;
      if (auto r = out.signature.declare_predicate_variable(n, a); !r) {
        fail(r.error());
        return;
      }
      if (!eat(',')) break;
    }
  }

  Term term() {
    std::string n = name();
    if (failed) return Term::var("?");
    if (!n.empty() && n[0] == '@') {
      fail("non-reserved name ('@' prefix is reserved for generated constants)");
      return Term::var("?");
    }
    if (eat('(')) {
      std::vector<Term> args;
      for (;;) {
        args.push_back(term());
        if (failed) return Term::var("?");
        if (!eat(',')) break;
      }
      if (!eat(')')) {
        fail("')'");
        return Term::var("?");
      }
      int a = static_cast<int>(args.size());
      auto it = func_arity.find(n);
      if (it != func_arity.end() && it->second != a) {
        fail("consistent arity for function '" + n + "'");
        return Term::var("?");
      }
      func_arity[n] = a;
      return Term::app(n, std::move(args));
    }
    if (is_variable_token(n)) return Term::var(n);
    return Term::constant(n);
  }

  // literal := "-"? atom; atom := NAME "(" ... ")" | NAME | term ("="|"!=") term
  Literal literal() {
    cur.skip_space_and_comments();
    bool negated = false;
    if (cur.peek() == '-') {
      cur.advance();
      negated = true;
    }
    Term lhs = term();
    if (failed) return Literal::base(true, "?", {});
    cur.skip_space_and_comments();
    if (cur.peek() == '=' || (cur.peek() == '!' && cur.peek2() == '=')) {
      bool pos = cur.peek() == '=';
      cur.advance();
      if (!pos) cur.advance();
      Term rhs = term();
      if (failed) return Literal::base(true, "?", {});
      return Literal::equality(negated ? !pos : pos, std::move(lhs), std::move(rhs));
    }
    // Plain atom: the parsed term is predicate syntax.
    if (lhs.kind == TermKind::Variable) {
      fail("predicate symbol (variables cannot head an atom)");
      return Literal::base(true, "?", {});
    }
    std::string n = lhs.name;
    std::vector<Term> args = std::move(lhs.args);
    if (lhs.kind == TermKind::Application) func_arity.erase(n);
    int a = static_cast<int>(args.size());
    if (is_witness_param_name(n)) {
      fail("non-reserved predicate name (W<digits> is reserved for witness parameters)");
      return Literal::base(true, "?", {});
    }
    auto it = pred_arity.find(n);
    if (it != pred_arity.end() && it->second != a) {
      fail("consistent arity for predicate '" + n + "'");
      return Literal::base(true, "?", {});
    }
    pred_arity[n] = a;
    bool is_var = out.signature.is_predicate_variable(n);
    if (is_var && out.signature.predicate_variable_arity(n) != a) {
      fail("arity " + std::to_string(out.signature.predicate_variable_arity(n)) +
           " for predicate variable '" + n + "'");
      return Literal::base(true, "?", {});
    }
    return is_var ? Literal::pred_var(!negated, n, std::move(args))
                  : Literal::base(!negated, n, std::move(args));
  }

  void clause() {
    Clause c;
    for (;;) {
      c.literals.push_back(literal());
      if (failed) return;
      if (!eat('|')) break;
    }
    out.clauses.add(std::move(c));
  }

  void consts() {
    for (;;) {
      std::string n = name();
      if (failed) return;
      if (is_variable_token(n)) {
        fail("constant name (u..z tokens are variables)");
        return;
      }
      if (!out.signature.is_constant(n)) {
        if (auto r = out.signature.declare_constant(n); !r) {
          fail(r.error());
          return;
        }
      }
      if (!eat(',')) break;
    }
  }

  void option() {
    std::string key = name();
    if (failed) return;
    if (!eat('=')) {
      fail("'=' in option");
      return;
    }
    cur.skip_space_and_comments();
    std::string value;
    while (!cur.done() && cur.peek() != '\n' && cur.peek() != '#') {
      value += cur.peek();
      cur.advance();
    }
    while (!value.empty() && (value.back() == ' ' || value.back() == '\r')) value.pop_back();
    out.options[key] = value;
  }

  void finalize_signature() {
    // Base predicates and functions are inferred from use; constants are
    // declared or inferred from clause occurrences.
    for (const auto& [n, a] : pred_arity) {
      if (func_arity.count(n)) {
        fail("distinct names for predicate and function '" + n + "'");
        return;
      }
      (void)a;
    }
    std::set<std::string> consts;
    for (const auto& [id, c] : out.clauses.clauses()) {
      (void)id;
      auto cc = c.constants();
      consts.insert(cc.begin(), cc.end());
    }
    for (const std::string& n : consts) {
      if (out.signature.is_constant(n)) continue;
      if (auto r = out.signature.declare_constant(n); !r) {
        fail(r.error());
        return;
      }
    }
    for (const auto& [n, a] : pred_arity) {
      if (out.signature.is_predicate_variable(n)) continue;
      if (auto r = out.signature.declare_base_predicate(n, a); !r) {
        fail(r.error());
        return;
      }
    }
    for (const auto& [n, a] : func_arity) {
      if (auto r = out.signature.declare_function(n, a); !r) {
        fail(r.error());
        return;
      }
    }
  }

  void run() {
    header();
    if (failed) return;
    for (;;) {
      cur.skip_space_and_comments();
      if (cur.done()) break;
      if (eat_keyword("clause:")) {
        clause();
      } else if (eat_keyword("consts:")) {
        consts();
      } else if (eat_keyword("option:")) {
        option();
      } else {
        fail("'clause:', 'consts:' or 'option:'");
      }
      if (failed) return;
    }
    finalize_signature();
  }
};

}  // namespace

Expected<ProblemFile> parse_problem(const std::string& text) {
  Parser p(text);
  p.run();
  if (p.failed) return Expected<ProblemFile>::fail(p.err.message());
  return std::move(p.out);
}

std::string render_problem(const ProblemFile& p) {
  std::ostringstream os;
  os << "vars: ";
  const auto& xs = p.signature.predicate_variables();
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ", ";
    os << xs[i].first << "/" << xs[i].second;
  }
  os << "\n";
  std::set<std::string> used;
  for (const auto& [id, c] : p.clauses.clauses()) {
    (void)id;
    auto cc = c.constants();
    used.insert(cc.begin(), cc.end());
  }
  std::vector<std::string> extra;
  for (const std::string& c : p.signature.constants())
    if (!used.count(c)) extra.push_back(c);
  if (!extra.empty()) {
    os << "consts: ";
    for (size_t i = 0; i < extra.size(); ++i) os << (i ? ", " : "") << extra[i];
    os << "\n";
  }
  for (const auto& [k, v] : p.options) os << "option: " << k << " = " << v << "\n";
  for (const auto& [id, c] : p.clauses.clauses()) {
    (void)id;
    os << "clause: " << clause_to_string(c) << "\n";
  }
  return os.str();
}

}  // namespace wscan
