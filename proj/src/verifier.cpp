#include "wscan/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace wscan {

Expected<int> eval_term(const Term& t, const FiniteStructure& m, const Env& env) {
  switch (t.kind) {
    case TermKind::Variable: {
      auto it = env.vars.find(t.name);
      if (it == env.vars.end())
        return Expected<int>::fail("unassigned variable '" + t.name + "'");
      return it->second;
    }
    case TermKind::Constant: {
      auto it = m.constants.find(t.name);
      if (it == m.constants.end())
        return Expected<int>::fail("uninterpreted constant '" + t.name + "'");
      return it->second;
    }
    case TermKind::Application: {
      auto it = m.functions.find(t.name);
      if (it == m.functions.end())
        return Expected<int>::fail("uninterpreted function '" + t.name + "'");
      std::uint64_t idx = 0;
      for (const Term& a : t.args) {
        auto v = eval_term(a, m, env);
        if (!v) return v;
        idx = idx * static_cast<std::uint64_t>(m.domain_size) + static_cast<std::uint64_t>(*v);
      }
      return it->second[idx];
    }
  }
  return Expected<int>::fail("bad term");
}

namespace {

Expected<std::uint64_t> tuple_index(const std::vector<Term>& args, const FiniteStructure& m,
                                    const Env& env) {
  std::uint64_t idx = 0;
  for (const Term& a : args) {
    auto v = eval_term(a, m, env);
    if (!v) return Expected<std::uint64_t>::fail(v.error());
    idx = idx * static_cast<std::uint64_t>(m.domain_size) + static_cast<std::uint64_t>(*v);
  }
  return idx;
}

Expected<bool> eval_atom(const Formula& f, const FiniteStructure& m, const Env& env) {
  if (f.atom == AtomKind::Equality) {
    auto a = eval_term(f.args[0], m, env);
    if (!a) return Expected<bool>::fail(a.error());
    auto b = eval_term(f.args[1], m, env);
    if (!b) return Expected<bool>::fail(b.error());
    return *a == *b;
  }
  auto idx = tuple_index(f.args, m, env);
  if (!idx) return Expected<bool>::fail(idx.error());
  const std::vector<char>* table = nullptr;
  auto it = env.preds.find(f.name);
  if (it != env.preds.end()) table = &it->second;
  if (!table) {
    auto pt = m.predicates.find(f.name);
    if (pt != m.predicates.end()) table = &pt->second;
  }
  if (!table) return Expected<bool>::fail("uninterpreted predicate '" + f.name + "'");
  if (*idx >= table->size())
    return Expected<bool>::fail("arity mismatch for predicate '" + f.name + "'");
  return (*table)[*idx] != 0;
}

}  // namespace

Expected<bool> eval_formula(const Formula& f, const FiniteStructure& m, const Env& env) {
  switch (f.kind) {
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Truncated:
      return Expected<bool>::fail("cannot evaluate a truncated expression");
    case FormulaKind::Atom:
      return eval_atom(f, m, env);
    case FormulaKind::Not: {
      auto r = eval_formula(f.children[0], m, env);
      if (!r) return r;
      return !*r;
    }
    case FormulaKind::And: {
      for (const Formula& ch : f.children) {
        auto r = eval_formula(ch, m, env);
        if (!r) return r;
        if (!*r) return false;
      }
      return true;
    }
    case FormulaKind::Or: {
      for (const Formula& ch : f.children) {
        auto r = eval_formula(ch, m, env);
        if (!r) return r;
        if (*r) return true;
      }
      return false;
    }
    case FormulaKind::Implies: {
      auto a = eval_formula(f.children[0], m, env);
      if (!a) return a;
      if (!*a) return true;
      return eval_formula(f.children[1], m, env);
    }
    case FormulaKind::Iff: {
      auto a = eval_formula(f.children[0], m, env);
      if (!a) return a;
      auto b = eval_formula(f.children[1], m, env);
      if (!b) return b;
      return *a == *b;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool is_forall = f.kind == FormulaKind::Forall;
      Env e2 = env;
      for (int v = 0; v < m.domain_size; ++v) {
        e2.vars[f.name] = v;
        auto r = eval_formula(f.children[0], m, e2);
        if (!r) return r;
        if (is_forall && !*r) return false;
        if (!is_forall && *r) return true;
      }
      return is_forall;
    }
    case FormulaKind::Forall2:
    case FormulaKind::Exists2: {
      bool is_forall = f.kind == FormulaKind::Forall2;
      std::uint64_t cells = ipow(m.domain_size, f.arity);
      Env e2 = env;
      std::vector<char> table(cells, 0);
      for (;;) {
        e2.preds[f.name] = table;
        auto r = eval_formula(f.children[0], m, e2);
        if (!r) return r;
        if (is_forall && !*r) return false;
        if (!is_forall && *r) return true;
        bool carried = true;
        for (size_t i = table.size(); i > 0 && carried; --i) {
          if (table[i - 1] == 0) {
            table[i - 1] = 1;
            carried = false;
          } else {
            table[i - 1] = 0;
          }
        }
        if (carried) return is_forall;
      }
    }
  }
  return Expected<bool>::fail("bad formula");
}

namespace {

Expected<bool> eval_literal_direct(const Literal& l, const FiniteStructure& m,
                                   const Env& env) {
  if (l.is_equality()) {
    auto a = eval_term(l.args[0], m, env);
    if (!a) return Expected<bool>::fail(a.error());
    auto b = eval_term(l.args[1], m, env);
    if (!b) return Expected<bool>::fail(b.error());
    return (*a == *b) == l.positive;
  }
  std::uint64_t idx = 0;
  for (const Term& t : l.args) {
    auto v = eval_term(t, m, env);
    if (!v) return Expected<bool>::fail(v.error());
    idx = idx * static_cast<std::uint64_t>(m.domain_size) + static_cast<std::uint64_t>(*v);
  }
  const std::vector<char>* table = nullptr;
  auto it = env.preds.find(l.pred);
  if (it != env.preds.end()) table = &it->second;
  if (!table) {
    auto pt = m.predicates.find(l.pred);
    if (pt != m.predicates.end()) table = &pt->second;
  }
  if (!table) return Expected<bool>::fail("uninterpreted predicate '" + l.pred + "'");
  if (idx >= table->size())
    return Expected<bool>::fail("arity mismatch for predicate '" + l.pred + "'");
  return ((*table)[idx] != 0) == l.positive;
}

}  // namespace

Expected<bool> eval_clause_set(const ClauseSet& n, const FiniteStructure& m, const Env& env) {
  for (const auto& [id, c] : n.clauses()) {
    (void)id;
    std::set<std::string> vars = c.variables();
    std::vector<std::string> vn(vars.begin(), vars.end());
    std::vector<int> assign(vn.size(), 0);
    Env e2 = env;
    for (;;) {
      for (size_t i = 0; i < vn.size(); ++i) e2.vars[vn[i]] = assign[i];
      bool clause_true = false;
      for (const Literal& l : c.literals) {
        auto r = eval_literal_direct(l, m, e2);
        if (!r) return r;
        if (*r) {
          clause_true = true;
          break;
        }
      }
      if (!clause_true) return false;
      // next assignment
      size_t i = vn.size();
      bool carried = true;
      while (i > 0 && carried) {
        --i;
        if (assign[i] + 1 < m.domain_size) {
          ++assign[i];
          carried = false;
        } else {
          assign[i] = 0;
        }
      }
      if (carried) break;
    }
  }
  return true;
}

namespace {

void merge_symbols(const ClauseSet& n, std::set<std::string>& consts,
                   std::map<std::string, int>& funcs, std::map<std::string, int>& preds,
                   std::map<std::string, int>& pred_vars) {
  for (const auto& [id, c] : n.clauses()) {
    (void)id;
    for (const Literal& l : c.literals) {
      Formula a = f_atom(l.atom, l.pred, l.args);
      collect_formula_symbols(a, consts, funcs, preds, pred_vars);
    }
  }
}

}  // namespace

SymbolTable collect_symbols(const ClauseSet& n, const PredVars& xs, const Witness* w) {
  std::set<std::string> consts;
  std::map<std::string, int> funcs, preds, pred_vars;
  merge_symbols(n, consts, funcs, preds, pred_vars);
  if (w)
    for (const PredicateExpression& e : w->components)
      collect_formula_symbols(e.body, consts, funcs, preds, pred_vars);
  for (const auto& [x, arity] : xs) {
    (void)arity;
    pred_vars.erase(x);
  }
  // Leftover predicate variables (not being eliminated) and witness
  // parameters count as ordinary predicates of the signature.
  for (const auto& [p, arity] : pred_vars) preds[p] = arity;
  SymbolTable t;
  t.constants.assign(consts.begin(), consts.end());
  for (const auto& [f, k] : funcs) t.functions.emplace_back(f, k);
  for (const auto& [p, k] : preds) t.predicates.emplace_back(p, k);
  return t;
}

namespace {

// ---------------------------------------------------------------------------
// Bitmask engine: for a fixed structure, the truth of a clause is a function
// of the predicate-variable tables alone. With b total table cells there are
// 2^b joint assignments; a clause's truth over all of them fits in a bit
// mask, and clause-set truth is the AND of clause masks. Soundness and
// existential equivalence of a derivation step are then word operations.

struct XLayout {
  PredVars xs;
  int domain = 1;
  std::vector<std::uint64_t> offsets;  // bit offset of each variable's table
  std::uint64_t total_bits = 0;
  // patterns[2*b + v]: mask of all assignments whose bit b equals v.
  std::vector<std::vector<std::uint64_t>> patterns;

  std::uint64_t words() const { return ((1ull << total_bits) + 63) / 64; }

  static std::optional<XLayout> make(const PredVars& xs, int domain) {
    XLayout l;
    l.xs = xs;
    l.domain = domain;
    for (const auto& [x, arity] : xs) {
      (void)x;
      l.offsets.push_back(l.total_bits);
      l.total_bits += ipow(domain, arity);
    }
    if (l.total_bits > 20) return std::nullopt;  // fall back to enumeration
    std::uint64_t n = 1ull << l.total_bits;
    std::uint64_t w = (n + 63) / 64;
    l.patterns.assign(2 * l.total_bits, std::vector<std::uint64_t>(w, 0));
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = 0; b < l.total_bits; ++b) {
        std::uint64_t v = (a >> b) & 1;
        l.patterns[2 * b + v][a / 64] |= 1ull << (a % 64);
      }
    }
    return l;
  }
};

using Mask = std::vector<std::uint64_t>;

// The set of joint X-assignments satisfying the clause in m, as a bit mask.
std::optional<Mask> clause_mask(const Clause& c, const FiniteStructure& m, const XLayout& l,
                                std::string& err) {
  std::uint64_t w = l.words();
  Mask mask(w, ~0ull);
  std::uint64_t n_assign = 1ull << l.total_bits;
  if (n_assign % 64 != 0) mask[w - 1] = (1ull << (n_assign % 64)) - 1;

  std::set<std::string> vset = c.variables();
  std::vector<std::string> vars(vset.begin(), vset.end());
  std::vector<int> vals(vars.size(), 0);
  Env env;
  Mask row(w, 0);
  for (;;) {
    env.vars.clear();
    for (size_t i = 0; i < vars.size(); ++i) env.vars[vars[i]] = vals[i];
    bool base_true = false;
    std::fill(row.begin(), row.end(), 0);
    for (const Literal& lit : c.literals) {
      if (lit.is_pred_var()) {
        int xi = -1;
        for (size_t i = 0; i < l.xs.size(); ++i)
          if (l.xs[i].first == lit.pred) xi = static_cast<int>(i);
        if (xi < 0) {
          err = "predicate variable " + lit.pred + " missing from the layout";
          return std::nullopt;
        }
        std::uint64_t idx = 0;
        for (const Term& t : lit.args) {
          auto ev = eval_term(t, m, env);
          if (!ev) {
            err = ev.error();
            return std::nullopt;
          }
          idx = idx * static_cast<std::uint64_t>(l.domain) + static_cast<std::uint64_t>(*ev);
        }
        std::uint64_t bit = l.offsets[static_cast<size_t>(xi)] + idx;
        const auto& pat = l.patterns[2 * bit + (lit.positive ? 1 : 0)];
        for (std::uint64_t i = 0; i < w; ++i) row[i] |= pat[i];
      } else if (lit.is_equality()) {
        auto a = eval_term(lit.args[0], m, env);
        auto b = eval_term(lit.args[1], m, env);
        if (!a || !b) {
          err = a ? b.error() : a.error();
          return std::nullopt;
        }
        if ((*a == *b) == lit.positive) {
          base_true = true;
          break;
        }
      } else {
        auto pt = m.predicates.find(lit.pred);
        if (pt == m.predicates.end()) {
          err = "uninterpreted predicate '" + lit.pred + "'";
          return std::nullopt;
        }
        std::uint64_t idx = 0;
        for (const Term& t : lit.args) {
          auto ev = eval_term(t, m, env);
          if (!ev) {
            err = ev.error();
            return std::nullopt;
          }
          idx = idx * static_cast<std::uint64_t>(m.domain_size) +
                static_cast<std::uint64_t>(*ev);
        }
        if ((pt->second[idx] != 0) == lit.positive) {
          base_true = true;
          break;
        }
      }
    }
    if (!base_true)
      for (std::uint64_t i = 0; i < w; ++i) mask[i] &= row[i];
    // advance variable assignment
    bool carried = true;
    for (size_t i = vars.size(); i > 0 && carried; --i) {
      if (vals[i - 1] + 1 < m.domain_size) {
        ++vals[i - 1];
        carried = false;
      } else {
        vals[i - 1] = 0;
      }
    }
    if (carried) break;
  }
  return mask;
}

bool mask_any(const Mask& m) {
  for (std::uint64_t wd : m)
    if (wd) return true;
  return false;
}

// Iterates all joint assignments of the predicate variables; fn returns
// false to stop early. Returns overall "stopped early".
bool for_each_predvar_assignment(const PredVars& xs, int domain_size,
                                 const std::function<bool(const Env&)>& fn) {
  std::vector<std::uint64_t> cells;
  for (const auto& [x, k] : xs) {
    (void)x;
    cells.push_back(ipow(domain_size, k));
  }
  Env env;
  std::vector<std::vector<char>> tables;
  for (size_t i = 0; i < xs.size(); ++i) tables.emplace_back(cells[i], 0);
  for (;;) {
    for (size_t i = 0; i < xs.size(); ++i) env.preds[xs[i].first] = tables[i];
    if (!fn(env)) return true;
    // advance
    bool carried = true;
    for (size_t i = tables.size(); i > 0 && carried; --i) {
      auto& tab = tables[i - 1];
      for (size_t j = tab.size(); j > 0; --j) {
        if (tab[j - 1] == 0) {
          tab[j - 1] = 1;
          carried = false;
          break;
        }
        tab[j - 1] = 0;
      }
    }
    if (carried) return false;
  }
}

Expected<bool> exists_xs(const ClauseSet& n, const PredVars& xs, const FiniteStructure& m) {
  if (auto layout = XLayout::make(xs, m.domain_size)) {
    std::string err;
    Mask acc(layout->words(), ~0ull);
    std::uint64_t n_assign = 1ull << layout->total_bits;
    if (n_assign % 64 != 0) acc[layout->words() - 1] = (1ull << (n_assign % 64)) - 1;
    for (const auto& [id, c] : n.clauses()) {
      (void)id;
      auto cm = clause_mask(c, m, *layout, err);
      if (!cm) return Expected<bool>::fail(err);
      for (size_t i = 0; i < acc.size(); ++i) acc[i] &= (*cm)[i];
      if (!mask_any(acc)) return false;
    }
    return mask_any(acc);
  }
  bool found = false;
  std::string err;
  for_each_predvar_assignment(xs, m.domain_size, [&](const Env& env) {
    auto r = eval_clause_set(n, m, env);
    if (!r) {
      err = r.error();
      return false;
    }
    if (*r) {
      found = true;
      return false;
    }
    return true;
  });
  if (!err.empty()) return Expected<bool>::fail(err);
  return found;
}

}  // namespace

Expected<Formula> clause_set_substituted(const ClauseSet& n, const PredVars& xs,
                                         const Witness& w) {
  if (w.components.size() != xs.size())
    return Expected<Formula>::fail("witness has " + std::to_string(w.components.size()) +
                                   " components for " + std::to_string(xs.size()) +
                                   " predicate variables");
  std::map<std::string, PredicateExpression> map;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (static_cast<int>(w.components[i].params.size()) != xs[i].second)
      return Expected<Formula>::fail("witness component for " + xs[i].first +
                                     " has wrong arity");
    map[xs[i].first] = w.components[i];
  }
  std::vector<Formula> conj;
  for (const auto& [id, c] : n.clauses()) {
    (void)id;
    Formula body = clause_formula_substituted(c, map);
    std::set<std::string> vars = c.variables();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = f_forall(*it, body);
    conj.push_back(std::move(body));
  }
  if (conj.empty()) return f_top();
  if (conj.size() == 1) return conj[0];
  return f_and(std::move(conj));
}

Expected<CheckReport> check_wsoqe(const ClauseSet& n, const PredVars& xs, const Witness& w,
                                  int k, std::uint64_t cap) {
  auto t0 = std::chrono::steady_clock::now();
  if (w.truncated())
    return Expected<CheckReport>::fail("witness is truncated (not first-order)");
  if (!w.first_order())
    return Expected<CheckReport>::fail("witness is not first-order");
  auto substituted = clause_set_substituted(n, xs, w);
  if (!substituted) return Expected<CheckReport>::fail(substituted.error());

  CheckReport rep;
  rep.cap = cap;
  SymbolTable syms = collect_symbols(n, xs, &w);
  StructureEnumerator en(syms, k);
  FiniteStructure m;
  Env empty;
  while (en.next(m)) {
    if (rep.structures_checked >= cap) {
      rep.capped = true;
      break;
    }
    ++rep.structures_checked;
    auto lhs = exists_xs(n, xs, m);
    if (!lhs) return Expected<CheckReport>::fail(lhs.error());
    auto rhs = eval_formula(*substituted, m, empty);
    if (!rhs) return Expected<CheckReport>::fail(rhs.error());
    if (*lhs != *rhs) {
      rep.verified = false;
      rep.counterexample = m;
      rep.detail = std::string("exists X N is ") + (*lhs ? "true" : "false") +
                   " but N[X <- witness] is " + (*rhs ? "true" : "false");
      rep.up_to = m.domain_size;
      rep.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return rep;
    }
  }
  rep.verified = true;
  rep.up_to = k;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

CheckReport check_step(const ClauseSet& n, const ClauseSet& n_after, const PredVars& xs,
                       int k, std::uint64_t cap) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.cap = cap;
  SymbolTable syms_before = collect_symbols(n, xs, nullptr);
  SymbolTable syms_after = collect_symbols(n_after, xs, nullptr);
  // Joint signature so both sets evaluate in the same structures.
  std::set<std::string> consts(syms_before.constants.begin(), syms_before.constants.end());
  consts.insert(syms_after.constants.begin(), syms_after.constants.end());
  std::map<std::string, int> funcs(syms_before.functions.begin(), syms_before.functions.end());
  funcs.insert(syms_after.functions.begin(), syms_after.functions.end());
  std::map<std::string, int> preds(syms_before.predicates.begin(),
                                   syms_before.predicates.end());
  preds.insert(syms_after.predicates.begin(), syms_after.predicates.end());
  SymbolTable syms;
  syms.constants.assign(consts.begin(), consts.end());
  for (const auto& [f, a] : funcs) syms.functions.emplace_back(f, a);
  for (const auto& [p, a] : preds) syms.predicates.emplace_back(p, a);

  StructureEnumerator en(syms, k);
  FiniteStructure m;
  while (en.next(m)) {
    if (rep.structures_checked >= cap) {
      rep.capped = true;
      break;
    }
    ++rep.structures_checked;
    std::string err;
    bool sound = true, lhs_ex = false, rhs_ex = false;
    if (auto layout = XLayout::make(xs, m.domain_size)) {
      Mask full(layout->words(), ~0ull);
      std::uint64_t n_assign = 1ull << layout->total_bits;
      if (n_assign % 64 != 0) full[layout->words() - 1] = (1ull << (n_assign % 64)) - 1;
      Mask ma = full, mb = full;
      for (const auto& [id, c] : n.clauses()) {
        (void)id;
        auto cm = clause_mask(c, m, *layout, err);
        if (!cm) break;
        for (size_t i = 0; i < ma.size(); ++i) ma[i] &= (*cm)[i];
      }
      if (err.empty()) {
        for (const auto& [id, c] : n_after.clauses()) {
          (void)id;
          auto cm = clause_mask(c, m, *layout, err);
          if (!cm) break;
          for (size_t i = 0; i < mb.size(); ++i) mb[i] &= (*cm)[i];
        }
      }
      if (err.empty()) {
        for (size_t i = 0; i < ma.size(); ++i)
          if (ma[i] & ~mb[i]) sound = false;
        lhs_ex = mask_any(ma);
        rhs_ex = mask_any(mb);
        if (!sound) err = "soundness violated: N holds but N' fails";
      }
    } else {
      for_each_predvar_assignment(xs, m.domain_size, [&](const Env& env) {
        auto a = eval_clause_set(n, m, env);
        if (!a) {
          err = a.error();
          return false;
        }
        auto b = eval_clause_set(n_after, m, env);
        if (!b) {
          err = b.error();
          return false;
        }
        if (*a && !*b) {
          err = "soundness violated: N holds but N' fails";
          return false;
        }
        lhs_ex = lhs_ex || *a;
        rhs_ex = rhs_ex || *b;
        return true;
      });
    }
    if (!err.empty()) {
      rep.verified = false;
      rep.counterexample = m;
      rep.detail = err;
      rep.up_to = m.domain_size;
      rep.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return rep;
    }
    if (lhs_ex != rhs_ex) {
      rep.verified = false;
      rep.counterexample = m;
      rep.detail = std::string("existential equivalence violated: exists X N is ") +
                   (lhs_ex ? "true" : "false") + ", exists X N' is " +
                   (rhs_ex ? "true" : "false");
      rep.up_to = m.domain_size;
      rep.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return rep;
    }
  }
  rep.verified = true;
  rep.up_to = k;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

DerivationCheck check_derivation(const Derivation& d, const PredVars& xs, int k,
                                 std::uint64_t cap) {
  DerivationCheck out;
  if (d.length() == 0) {
    out.verified = true;
    out.report.verified = true;
    out.report.up_to = k;
    return out;
  }
  // Joint signature over every intermediate clause set (clause ids are
  // unique within a derivation, so clause truth masks can be shared).
  std::map<int, const Clause*> universe;
  for (const ClauseSet& s : d.states())
    for (const auto& [id, c] : s.clauses()) universe.emplace(id, &c);
  ClauseSet all;
  for (const auto& [id, c] : universe) {
    (void)id;
    Clause copy = *c;
    copy.id = 0;
    all.add(std::move(copy));
  }
  SymbolTable syms = collect_symbols(all, xs, nullptr);

  auto t0 = std::chrono::steady_clock::now();
  CheckReport& rep = out.report;
  rep.cap = cap;
  StructureEnumerator en(syms, k);
  FiniteStructure m;
  while (en.next(m)) {
    if (rep.structures_checked >= cap) {
      rep.capped = true;
      break;
    }
    ++rep.structures_checked;
    auto layout = XLayout::make(xs, m.domain_size);
    if (!layout) {
      // Fall back to the per-step slow check for this structure count.
      for (size_t i = 0; i < d.length(); ++i) {
        CheckReport step = check_step(d.states()[i], d.states()[i + 1], xs, k, cap);
        if (!step.verified) {
          out.verified = false;
          out.failed_step = i + 1;
          out.report = step;
          return out;
        }
      }
      out.verified = true;
      rep.verified = true;
      rep.up_to = k;
      return out;
    }
    std::string err;
    std::map<int, Mask> masks;
    for (const auto& [id, c] : universe) {
      auto cm = clause_mask(*c, m, *layout, err);
      if (!cm) break;
      masks.emplace(id, std::move(*cm));
    }
    if (!err.empty()) {
      out.verified = false;
      out.failed_step = 1;
      rep.verified = false;
      rep.detail = err;
      return out;
    }
    Mask full(layout->words(), ~0ull);
    std::uint64_t n_assign = 1ull << layout->total_bits;
    if (n_assign % 64 != 0) full[layout->words() - 1] = (1ull << (n_assign % 64)) - 1;
    auto set_mask = [&](const ClauseSet& s) {
      Mask acc = full;
      for (const auto& [id, c] : s.clauses()) {
        (void)c;
        const Mask& cm = masks.at(id);
        for (size_t i = 0; i < acc.size(); ++i) acc[i] &= cm[i];
      }
      return acc;
    };
    Mask prev = set_mask(d.states()[0]);
    for (size_t i = 0; i < d.length(); ++i) {
      Mask next = set_mask(d.states()[i + 1]);
      bool sound = true;
      for (size_t w = 0; w < prev.size(); ++w)
        if (prev[w] & ~next[w]) sound = false;
      bool lhs_ex = mask_any(prev);
      bool rhs_ex = mask_any(next);
      if (!sound || lhs_ex != rhs_ex) {
        out.verified = false;
        out.failed_step = i + 1;
        rep.verified = false;
        rep.counterexample = m;
        rep.up_to = m.domain_size;
        rep.detail = !sound ? "soundness violated: N holds but N' fails"
                            : "existential equivalence violated across the step";
        rep.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
      }
      prev = std::move(next);
    }
  }
  out.verified = true;
  rep.verified = true;
  rep.up_to = k;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

Expected<FeqReport> feq_check(const ClauseSet& n, const PredVars& xs, const Derivation& d,
                              const Witness& w, int k) {
  FeqReport rep;
  rep.up_to = k;
  if (n.empty()) {
    rep.verdict = FeqVerdict::FeqSolution;
    rep.detail = "the empty clause set is valid";
    return rep;
  }
  auto substituted = clause_set_substituted(n, xs, w);
  if (!substituted) return Expected<FeqReport>::fail(substituted.error());
  SymbolTable syms = collect_symbols(n, xs, &w);
  StructureEnumerator en(syms, k);
  FiniteStructure m;
  Env empty;
  while (en.next(m)) {
    auto r = eval_formula(*substituted, m, empty);
    if (!r) return Expected<FeqReport>::fail(r.error());
    if (!*r) {
      rep.verdict = FeqVerdict::Countermodel;
      rep.countermodel = m;
      rep.detail = "N[X <- witness] fails in a structure of size " +
                   std::to_string(m.domain_size);
      return rep;
    }
  }
  if (d.conclusion().empty() && d.is_one_sided()) {
    rep.verdict = FeqVerdict::FeqBySufficientCondition;
    rep.detail = "derivation concludes with the empty clause set and is one-sided";
    return rep;
  }
  rep.verdict = FeqVerdict::UnknownUpTo;
  rep.detail = "no countermodel up to domain size " + std::to_string(k) +
               "; bounded search cannot certify validity";
  return rep;
}

Witness instantiate_witness_params(const Witness& w, bool top) {
  Witness out = w;
  for (PredicateExpression& e : out.components) e = instantiate_params(e, top);
  return out;
}

namespace {

Formula instantiate_params_rec(const Formula& f, bool top) {
  if (f.kind == FormulaKind::Atom && f.atom == AtomKind::Base &&
      is_witness_param_name(f.name))
    return top ? f_top() : f_bot();
  Formula r = f;
  for (Formula& ch : r.children) ch = instantiate_params_rec(ch, top);
  return r;
}

}  // namespace

PredicateExpression instantiate_params(const PredicateExpression& e, bool top) {
  PredicateExpression out = e;
  out.body = instantiate_params_rec(e.body, top);
  return out;
}

Expected<bool> predicate_expressions_equivalent(const PredicateExpression& a,
                                                const PredicateExpression& b, int k,
                                                std::uint64_t cap) {
  if (a.params.size() != b.params.size())
    return Expected<bool>::fail("predicate expressions of different arity");
  if (a.truncated || b.truncated)
    return Expected<bool>::fail("cannot compare truncated expressions");
  // Compare forall u (a(u) <-> b(u)) over the joint signature; predicate
  // variables and witness parameters both range over tables via the
  // structure's predicate tables.
  std::vector<Term> params;
  std::vector<std::string> names;
  for (size_t i = 0; i < a.params.size(); ++i) {
    names.push_back("u_cmp" + std::to_string(i + 1));
    params.push_back(Term::var(names.back()));
  }
  Formula body = f_iff(beta_apply(a, params), beta_apply(b, params));
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = f_forall(*it, body);

  std::set<std::string> consts;
  std::map<std::string, int> funcs, preds, pred_vars;
  collect_formula_symbols(body, consts, funcs, preds, pred_vars);
  for (const auto& [p, arity] : pred_vars) preds[p] = arity;
  SymbolTable syms;
  syms.constants.assign(consts.begin(), consts.end());
  for (const auto& [f, ar] : funcs) syms.functions.emplace_back(f, ar);
  for (const auto& [p, ar] : preds) syms.predicates.emplace_back(p, ar);

  StructureEnumerator en(syms, k);
  FiniteStructure m;
  Env empty;
  std::uint64_t seen = 0;
  while (en.next(m)) {
    if (seen++ >= cap) break;
    auto r = eval_formula(body, m, empty);
    if (!r) return r;
    if (!*r) return false;
  }
  return true;
}

}  // namespace wscan
