#include "wscan/formula.hpp"

#include <cassert>

namespace wscan {

Formula f_top() { return {}; }

Formula f_bot() {
  Formula f;
  f.kind = FormulaKind::Bot;
  return f;
}

Formula f_truncated() {
  Formula f;
  f.kind = FormulaKind::Truncated;
  return f;
}

Formula f_atom(AtomKind k, std::string name, std::vector<Term> args) {
  Formula f;
  f.kind = FormulaKind::Atom;
  f.atom = k;
  f.name = std::move(name);
  f.args = std::move(args);
  return f;
}

Formula f_eq(Term lhs, Term rhs) {
  return f_atom(AtomKind::Equality, "", {std::move(lhs), std::move(rhs)});
}

Formula f_not(Formula f) {
  Formula n;
  n.kind = FormulaKind::Not;
  n.children.push_back(std::move(f));
  return n;
}

Formula f_and(std::vector<Formula> fs) {
  Formula f;
  f.kind = FormulaKind::And;
  f.children = std::move(fs);
  return f;
}

Formula f_or(std::vector<Formula> fs) {
  Formula f;
  f.kind = FormulaKind::Or;
  f.children = std::move(fs);
  return f;
}

Formula f_implies(Formula a, Formula b) {
  Formula f;
  f.kind = FormulaKind::Implies;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

Formula f_iff(Formula a, Formula b) {
  Formula f;
  f.kind = FormulaKind::Iff;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

static Formula quantifier(FormulaKind k, std::string var, Formula body) {
  Formula f;
  f.kind = k;
  f.name = std::move(var);
  f.children.push_back(std::move(body));
  return f;
}

Formula f_forall(std::string var, Formula body) {
  return quantifier(FormulaKind::Forall, std::move(var), std::move(body));
}

Formula f_exists(std::string var, Formula body) {
  return quantifier(FormulaKind::Exists, std::move(var), std::move(body));
}

Formula f_forall2(std::string pred_var, int arity, Formula body) {
  Formula f = quantifier(FormulaKind::Forall2, std::move(pred_var), std::move(body));
  f.arity = arity;
  return f;
}

Formula f_exists2(std::string pred_var, int arity, Formula body) {
  Formula f = quantifier(FormulaKind::Exists2, std::move(pred_var), std::move(body));
  f.arity = arity;
  return f;
}

Formula literal_formula(const Literal& l) {
  Formula a = f_atom(l.atom, l.pred, l.args);
  return l.positive ? a : f_not(std::move(a));
}

Formula clause_formula(const Clause& c) {
  if (c.empty()) return f_bot();
  std::vector<Formula> fs;
  fs.reserve(c.literals.size());
  for (const Literal& l : c.literals) fs.push_back(literal_formula(l));
  if (fs.size() == 1) return fs[0];
  return f_or(std::move(fs));
}

Formula negated_clause_formula(const Clause& c) {
  if (c.empty()) return f_top();
  std::vector<Formula> fs;
  fs.reserve(c.literals.size());
  for (const Literal& l : c.literals) fs.push_back(literal_formula(l.dual()));
  if (fs.size() == 1) return fs[0];
  return f_and(std::move(fs));
}

void collect_free_vars(const Formula& f, std::set<std::string>& out,
                       std::set<std::string> bound) {
  switch (f.kind) {
    case FormulaKind::Atom: {
      std::set<std::string> vs;
      for (const Term& t : f.args) collect_vars(t, vs);
      for (const std::string& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::set<std::string> b = bound;
      b.insert(f.name);
      collect_free_vars(f.children[0], out, std::move(b));
      return;
    }
    default:
      for (const Formula& ch : f.children) collect_free_vars(ch, out, bound);
      return;
  }
}

bool formula_contains_pred_var(const Formula& f, const std::string& name) {
  if (f.kind == FormulaKind::Atom) return f.atom == AtomKind::PredVar && f.name == name;
  if ((f.kind == FormulaKind::Forall2 || f.kind == FormulaKind::Exists2) && f.name == name)
    return false;  // shadowed
  for (const Formula& ch : f.children)
    if (formula_contains_pred_var(ch, name)) return true;
  return false;
}

bool formula_contains_truncation(const Formula& f) {
  if (f.kind == FormulaKind::Truncated) return true;
  for (const Formula& ch : f.children)
    if (formula_contains_truncation(ch)) return true;
  return false;
}

namespace {

void collect_term_symbols(const Term& t, std::set<std::string>& consts,
                          std::map<std::string, int>& funcs) {
  if (t.kind == TermKind::Constant) consts.insert(t.name);
  if (t.kind == TermKind::Application) funcs[t.name] = static_cast<int>(t.args.size());
  for (const Term& a : t.args) collect_term_symbols(a, consts, funcs);
}

}  // namespace

void collect_formula_symbols(const Formula& f, std::set<std::string>& consts,
                             std::map<std::string, int>& funcs,
                             std::map<std::string, int>& preds,
                             std::map<std::string, int>& pred_vars) {
  if (f.kind == FormulaKind::Atom) {
    if (f.atom == AtomKind::Base) preds[f.name] = static_cast<int>(f.args.size());
    if (f.atom == AtomKind::PredVar) pred_vars[f.name] = static_cast<int>(f.args.size());
    for (const Term& t : f.args) collect_term_symbols(t, consts, funcs);
  }
  for (const Formula& ch : f.children)
    collect_formula_symbols(ch, consts, funcs, preds, pred_vars);
}

namespace {

std::string fresh_var_like(const std::string& base, const std::set<std::string>& taken) {
  std::string stem = base;
  auto pos = stem.rfind("_r");
  if (pos != std::string::npos) stem = stem.substr(0, pos);
  for (int k = 1;; ++k) {
    std::string cand = stem + "_r" + std::to_string(k);
    if (!taken.count(cand)) return cand;
  }
}

Formula substitute_rec(const Formula& f, const std::map<std::string, Term>& bind) {
  switch (f.kind) {
    case FormulaKind::Atom: {
      Formula r = f;
      for (Term& t : r.args) t = apply_once(bind, t);
      return r;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::map<std::string, Term> inner = bind;
      inner.erase(f.name);
      if (inner.empty()) return f;
      // Rename the bound variable when a substituted term would capture it.
      std::set<std::string> range_vars;
      std::set<std::string> free;
      collect_free_vars(f.children[0], free);
      for (const auto& [v, t] : inner)
        if (free.count(v)) collect_vars(t, range_vars);
      Formula r = f;
      if (range_vars.count(f.name)) {
        std::set<std::string> taken = range_vars;
        taken.insert(free.begin(), free.end());
        std::string nv = fresh_var_like(f.name, taken);
        inner[f.name] = Term::var(nv);
        r.name = nv;
      }
      r.children[0] = substitute_rec(f.children[0], inner);
      return r;
    }
    default: {
      Formula r = f;
      for (Formula& ch : r.children) ch = substitute_rec(ch, bind);
      return r;
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& s) {
  return substitute_rec(f, s.bindings());
}

Formula beta_apply(const PredicateExpression& e, const std::vector<Term>& args) {
  assert(e.params.size() == args.size());
  std::map<std::string, Term> bind;
  for (size_t i = 0; i < e.params.size(); ++i) bind[e.params[i]] = args[i];
  return substitute_rec(e.body, bind);
}

Formula substitute_pred_vars(const Formula& f,
                             const std::map<std::string, PredicateExpression>& map) {
  switch (f.kind) {
    case FormulaKind::Atom: {
      if (f.atom != AtomKind::PredVar) return f;
      auto it = map.find(f.name);
      if (it == map.end()) return f;
      assert(it->second.params.size() == f.args.size() && "second-order arity mismatch");
      return beta_apply(it->second, f.args);
    }
    case FormulaKind::Forall2:
    case FormulaKind::Exists2: {
      std::map<std::string, PredicateExpression> inner = map;
      inner.erase(f.name);
      Formula r = f;
      r.children[0] = substitute_pred_vars(f.children[0], inner);
      return r;
    }
    default: {
      Formula r = f;
      for (Formula& ch : r.children) ch = substitute_pred_vars(ch, map);
      return r;
    }
  }
}

Formula clause_formula_substituted(const Clause& c,
                                   const std::map<std::string, PredicateExpression>& map) {
  return substitute_pred_vars(clause_formula(c), map);
}

bool Witness::first_order() const {
  for (const PredicateExpression& e : components)
    if (!e.first_order) return false;
  return true;
}

bool Witness::truncated() const {
  for (const PredicateExpression& e : components)
    if (e.truncated) return true;
  return false;
}

namespace {

Size add(Size a, Size b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

}  // namespace

Size size_of(const Term& t) {
  if (t.kind != TermKind::Application) return 1;
  return add(1, size_of(t.args));
}

Size size_of(const std::vector<Term>& ts) {
  Size s = 0;
  for (const Term& t : ts) s = add(s, size_of(t));
  return s;
}

Size size_of(const Literal& l) { return size_of(literal_formula(l)); }

Size size_of(const Clause& c) { return size_of(clause_formula(c)); }

Size size_of(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 1;
    case FormulaKind::Truncated:
      return std::nullopt;
    case FormulaKind::Atom:
      // Equality counts as a binary predicate symbol.
      return add(1, size_of(f.args));
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::Forall2:
    case FormulaKind::Exists2:
      return add(1, size_of(f.children[0]));
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      Size s = 0;
      for (const Formula& ch : f.children) s = add(s, size_of(ch));
      return s;
    }
  }
  return 0;
}

Size size_of(const PredicateExpression& e) { return size_of(e.body); }

Size size_of(const Witness& w) {
  Size s = 0;
  for (const PredicateExpression& e : w.components) s = add(s, size_of(e));
  return s;
}

}  // namespace wscan
