#include "wscan/witness.hpp"

#include <algorithm>
#include <cassert>

namespace wscan {

namespace {

bool free_in(const Formula& f, const std::string& var) {
  std::set<std::string> fv;
  collect_free_vars(f, fv);
  return fv.count(var) > 0;
}

// One-point collapse across a homogeneous quantifier block:
//   forall u (u != t | phi)  ->  phi[u <- t]
//   exists u (u  = t & phi)  ->  phi[u <- t]
// where u does not occur in t. The matched literal may sit in an n-ary
// connective directly under the block.
std::optional<Formula> one_point(const Formula& f) {
  bool is_forall = f.kind == FormulaKind::Forall;
  FormulaKind qk = f.kind;
  std::vector<std::string> block;
  const Formula* body = &f;
  while (body->kind == qk) {
    block.push_back(body->name);
    body = &body->children[0];
  }
  // Candidate literals: children of the expected connective, or the body
  // itself when it is a single literal.
  std::vector<Formula> operands;
  FormulaKind conn = is_forall ? FormulaKind::Or : FormulaKind::And;
  if (body->kind == conn)
    operands = body->children;
  else
    operands = {*body};

  for (size_t oi = 0; oi < operands.size(); ++oi) {
    const Formula& op = operands[oi];
    const Formula* eq = nullptr;
    if (is_forall) {
      if (op.kind == FormulaKind::Not && op.children[0].kind == FormulaKind::Atom &&
          op.children[0].atom == AtomKind::Equality)
        eq = &op.children[0];
    } else {
      if (op.kind == FormulaKind::Atom && op.atom == AtomKind::Equality) eq = &op;
    }
    if (!eq) continue;
    for (const std::string& v : block) {
      Term vt = Term::var(v);
      Term other;
      if (eq->args[0] == vt && !occurs_in(v, eq->args[1]))
        other = eq->args[1];
      else if (eq->args[1] == vt && !occurs_in(v, eq->args[0]))
        other = eq->args[0];
      else
        continue;
      std::vector<Formula> rest;
      for (size_t k = 0; k < operands.size(); ++k)
        if (k != oi) rest.push_back(operands[k]);
      Formula inner;
      if (rest.empty())
        inner = is_forall ? f_bot() : f_top();
      else if (rest.size() == 1)
        inner = rest[0];
      else
        inner = is_forall ? f_or(std::move(rest)) : f_and(std::move(rest));
      auto sub = Substitution::make({{v, other}});
      assert(sub.ok());
      inner = substitute(inner, *sub);
      for (auto it = block.rbegin(); it != block.rend(); ++it) {
        if (*it == v) continue;
        inner = is_forall ? f_forall(*it, std::move(inner)) : f_exists(*it, std::move(inner));
      }
      return inner;
    }
  }
  return std::nullopt;
}

Formula simplify_once(const Formula& f) {
  Formula g = f;
  for (Formula& ch : g.children) ch = simplify_once(ch);
  switch (g.kind) {
    case FormulaKind::Atom:
      if (g.atom == AtomKind::Equality && g.args[0].kind != TermKind::Variable &&
          g.args[1].kind == TermKind::Variable)
        std::swap(g.args[0], g.args[1]);
      return g;
    case FormulaKind::Not: {
      const Formula& c = g.children[0];
      if (c.kind == FormulaKind::Top) return f_bot();
      if (c.kind == FormulaKind::Bot) return f_top();
      if (c.kind == FormulaKind::Not) return c.children[0];
      return g;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      bool is_and = g.kind == FormulaKind::And;
      std::vector<Formula> kids;
      for (Formula& ch : g.children) {
        if (is_and && ch.kind == FormulaKind::Top) continue;
        if (!is_and && ch.kind == FormulaKind::Bot) continue;
        if (is_and && ch.kind == FormulaKind::Bot) return f_bot();
        if (!is_and && ch.kind == FormulaKind::Top) return f_top();
        kids.push_back(std::move(ch));
      }
      if (kids.empty()) return is_and ? f_top() : f_bot();
      if (kids.size() == 1) return kids[0];
      g.children = std::move(kids);
      return g;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (!free_in(g.children[0], g.name)) return g.children[0];
      if (auto op = one_point(g)) return *op;
      return g;
    }
    default:
      return g;
  }
}

}  // namespace

Formula simplify_formula(const Formula& f) {
  Formula cur = f;
  for (int round = 0; round < 64; ++round) {
    Formula next = simplify_once(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  return cur;
}

PredicateExpression simplify(const PredicateExpression& e) {
  PredicateExpression out = e;
  out.body = simplify_formula(e.body);
  out.truncated = formula_contains_truncation(out.body);
  out.first_order = !out.truncated;
  return out;
}

Witness simplify(const Witness& w) {
  Witness out = w;
  for (PredicateExpression& e : out.components) e = simplify(e);
  return out;
}

namespace {

std::vector<std::string> default_params(int arity) {
  static const char* bases[] = {"u", "v", "w"};
  std::vector<std::string> out;
  for (int i = 0; i < arity; ++i) {
    std::string n = bases[i % 3];
    if (i >= 3) n += std::to_string(i / 3);
    out.push_back(n);
  }
  return out;
}

PredicateExpression const_expression(int arity, bool top) {
  PredicateExpression e;
  e.params = default_params(arity);
  e.body = top ? f_top() : f_bot();
  return e;
}

}  // namespace

Witness transform(const DerivationStep& s, const ClauseSet& before, const Witness& w,
                  Signature& sig, const TransformOptions& opt,
                  std::map<int, PredicateExpression>* annotation, int step_index) {
  switch (s.kind) {
    case StepKind::Res:
    case StepKind::Fac:
    case StepKind::ConstrElim:
    case StepKind::RedElim:
      return w;
    case StepKind::ExtPurDel: {
      int i = sig.predicate_variable_index(s.pred_var);
      assert(i >= 0);
      Witness out = w;
      out.components[static_cast<size_t>(i)] =
          const_expression(sig.predicate_variable_arity(s.pred_var), s.polarity == '+');
      return out;
    }
    case StepKind::PurDel: {
      const Clause* pc = before.find(s.p1.clause_id);
      assert(pc);
      PointedClause p{*pc, s.p1.lit_index};
      int i = sig.predicate_variable_index(p.literal().pred);
      assert(i >= 0);
      UnitClosure u = unit_closure(p, sig, opt.depth_limit);
      PredicateExpression rp = res_predicate(u);
      if (annotation) (*annotation)[step_index] = rp;
      std::map<std::string, PredicateExpression> map;
      const auto& xs = sig.predicate_variables();
      for (size_t j = 0; j < xs.size(); ++j) map[xs[j].first] = w.components[j];
      PredicateExpression comp;
      comp.params = rp.params;
      comp.body = substitute_pred_vars(rp.body, map);
      comp.truncated = formula_contains_truncation(comp.body);
      comp.first_order = !comp.truncated;
      if (opt.apply_simplification) comp = simplify(comp);
      Witness out = w;
      out.components[static_cast<size_t>(i)] = std::move(comp);
      return out;
    }
  }
  return w;
}

Expected<WitnessTrace> extract_witness(const Derivation& d, Signature& sig,
                                       const TransformOptions& opt) {
  const auto& xs = sig.predicate_variables();
  if (!d.eliminating(xs))
    return Expected<WitnessTrace>::fail(
        "derivation is not X-eliminating: its conclusion still contains predicate variables");

  WitnessTrace trace;
  size_t m = d.length();
  trace.per_step.resize(m + 1);

  Witness base;
  for (size_t i = 0; i < xs.size(); ++i) {
    PredicateExpression e;
    e.params = default_params(xs[i].second);
    std::vector<Term> args;
    for (const std::string& prm : e.params) args.push_back(Term::var(prm));
    e.body = f_atom(AtomKind::Base, "W" + std::to_string(i + 1), std::move(args));
    base.components.push_back(std::move(e));
  }
  trace.per_step[m] = std::move(base);

  for (size_t i = m; i > 0; --i) {
    trace.per_step[i - 1] =
        transform(d.steps()[i - 1], d.states()[i - 1], trace.per_step[i], sig, opt,
                  &trace.annotation_used, static_cast<int>(i));
  }
  trace.final = trace.per_step[0];
  return trace;
}

Expected<std::pair<ClauseSet, Derivation>> generate_size_family(int p, int n, Signature& sig) {
  if (p < 1 || n < 1)
    return Expected<std::pair<ClauseSet, Derivation>>::fail("family needs p >= 1 and n >= 1");
  if (!sig.is_predicate_variable("X")) {
    if (auto r = sig.declare_predicate_variable("X", 1); !r)
      return Expected<std::pair<ClauseSet, Derivation>>::fail(r.error());
  }
  ClauseSet set;
  for (int i = 1; i <= p; ++i) {
    Clause c;
    for (int j = 1; j <= n; ++j) {
      std::string name = "c" + std::to_string(i) + "_" + std::to_string(j);
      if (!sig.is_constant(name)) {
        if (auto r = sig.declare_constant(name); !r)
          return Expected<std::pair<ClauseSet, Derivation>>::fail(r.error());
      }
      c.literals.push_back(Literal::pred_var(true, "X", {Term::constant(name)}));
    }
    set.add(std::move(c));
  }
  Derivation d(set);
  for (int i = 1; i <= p; ++i) {
    if (auto r = d.push(make_pur_del_step(ClauseLitRef{i, 0})); !r)
      return Expected<std::pair<ClauseSet, Derivation>>::fail(r.error());
  }
  return std::make_pair(std::move(set), std::move(d));
}

namespace {

// Locates the Ackermann-shaped clause: a single occurrence of x on a tuple
// of distinct variables covering the rest of the clause's variables, with
// every other clause containing x only with the opposite polarity.
struct AckermannShape {
  int clause_id = 0;
  int lit_index = -1;
  bool designated_negative = true;
};

std::optional<AckermannShape> find_ackermann(const ClauseSet& n, const std::string& x) {
  for (bool negative : {true, false}) {
    for (const auto& [id, c] : n.clauses()) {
      for (size_t i = 0; i < c.literals.size(); ++i) {
        const Literal& l = c.literals[i];
        if (!l.is_pred_var() || l.pred != x || l.positive == negative) continue;
        // tuple of distinct variables
        std::set<std::string> seen;
        bool vars_ok = true;
        for (const Term& t : l.args) {
          if (!t.is_var() || seen.count(t.name)) {
            vars_ok = false;
            break;
          }
          seen.insert(t.name);
        }
        if (!vars_ok) continue;
        // x absent from the remainder, remainder's variables covered by the tuple
        bool rest_ok = true;
        for (size_t k = 0; k < c.literals.size() && rest_ok; ++k) {
          if (k == i) continue;
          const Literal& m = c.literals[k];
          if (m.is_pred_var() && m.pred == x) rest_ok = false;
          std::set<std::string> vs;
          for (const Term& t : m.args) collect_vars(t, vs);
          for (const std::string& v : vs)
            if (!seen.count(v)) rest_ok = false;
        }
        if (!rest_ok) continue;
        // every other clause contains x only with the dual polarity
        bool others_ok = true;
        for (const auto& [oid, oc] : n.clauses()) {
          if (oid == id) continue;
          bool pos, neg;
          oc.pred_var_polarities(x, pos, neg);
          if (negative ? neg : pos) {
            others_ok = false;
            break;
          }
        }
        if (!others_ok) continue;
        return AckermannShape{id, static_cast<int>(i), negative};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PredicateExpression> ackermann_witness(const ClauseSet& n, const std::string& x,
                                                     const Signature& sig) {
  (void)sig;
  auto shape = find_ackermann(n, x);
  if (!shape) return std::nullopt;
  const Clause& c = n.at(shape->clause_id);
  const Literal& l = c.literals[static_cast<size_t>(shape->lit_index)];
  Clause rest = c;
  rest.literals.erase(rest.literals.begin() + shape->lit_index);
  PredicateExpression e;
  for (const Term& t : l.args) e.params.push_back(t.name);
  e.body = shape->designated_negative ? clause_formula(rest) : negated_clause_formula(rest);
  return e;
}

Expected<Derivation> ackermann_derivation(const ClauseSet& n, const std::string& x,
                                          const Signature& sig, const SaturationConfig& cfg) {
  auto shape = find_ackermann(n, x);
  if (!shape) return Expected<Derivation>::fail("clause set is not Ackermann-shaped for " + x);
  Derivation d(n);
  PurifyResult pr = purify(n, ClauseLitRef{shape->clause_id, shape->lit_index}, cfg);
  if (!pr.ok)
    return Expected<Derivation>::fail(pr.limit_exceeded ? "purification limit reached"
                                                        : pr.error);
  for (const DerivationStep& s : pr.steps) {
    if (auto r = d.push(s); !r) return Expected<Derivation>::fail(r.error());
  }
  if (d.conclusion().contains_pred_var(x)) {
    char pol = shape->designated_negative ? '+' : '-';
    auto step = make_ext_pur_del_step(x, pol, d.conclusion().clauses_with(x));
    if (auto r = d.push(step); !r) return Expected<Derivation>::fail(r.error());
  }
  // Other predicate variables may remain; the Ackermann result only
  // concerns x, so eliminate the rest with the normal loop if required.
  return d;
}

}  // namespace wscan
