#include "wscan/subst.hpp"

#include <algorithm>
#include <cctype>

namespace wscan {

namespace {

Term apply_bindings(const std::map<std::string, Term>& b, const Term& t) {
  if (t.kind == TermKind::Variable) {
    auto it = b.find(t.name);
    return it == b.end() ? t : it->second;
  }
  if (t.kind == TermKind::Constant) return t;
  Term r = t;
  for (Term& a : r.args) a = apply_bindings(b, a);
  return r;
}

bool in_solved_form(const std::map<std::string, Term>& b) {
  for (const auto& [v, t] : b) {
    (void)v;
    std::set<std::string> vs;
    collect_vars(t, vs);
    for (const std::string& w : vs)
      if (b.count(w)) return false;
  }
  return true;
}

}  // namespace

Expected<Substitution> Substitution::make(std::map<std::string, Term> bindings) {
  for (auto it = bindings.begin(); it != bindings.end();) {
    if (it->second.kind == TermKind::Variable && it->second.name == it->first)
      it = bindings.erase(it);
    else
      ++it;
  }
  // Iterate the bindings into each other until solved; bail out on cycles.
  for (size_t round = 0; round <= bindings.size(); ++round) {
    if (in_solved_form(bindings)) {
      Substitution s;
      s.bind_ = std::move(bindings);
      return s;
    }
    std::map<std::string, Term> next;
    for (const auto& [v, t] : bindings) {
      Term nt = apply_bindings(bindings, t);
      if (occurs_in(v, nt))
        return Expected<Substitution>::fail("cyclic substitution on variable '" + v + "'");
      if (!(nt.kind == TermKind::Variable && nt.name == v)) next[v] = std::move(nt);
    }
    bindings = std::move(next);
  }
  return Expected<Substitution>::fail("substitution did not normalize");
}

Term Substitution::apply(const Term& t) const { return apply_bindings(bind_, t); }

Literal Substitution::apply(const Literal& l) const {
  Literal r = l;
  for (Term& t : r.args) t = apply(t);
  return r;
}

Clause Substitution::apply(const Clause& c) const {
  Clause r = c;
  for (Literal& l : r.literals) l = apply(l);
  return r;
}

std::vector<Term> Substitution::apply(const std::vector<Term>& ts) const {
  std::vector<Term> r = ts;
  for (Term& t : r) t = apply(t);
  return r;
}

Substitution Substitution::compose(const Substitution& then) const {
  std::map<std::string, Term> out;
  for (const auto& [v, t] : bind_) {
    Term nt = then.apply(t);
    if (!(nt.kind == TermKind::Variable && nt.name == v)) out[v] = std::move(nt);
  }
  for (const auto& [v, t] : then.bind_) {
    if (!bind_.count(v)) out[v] = t;
  }
  Substitution s;
  s.bind_ = std::move(out);
  return s;
}

namespace {

bool unify_rec(const Term& a, const Term& b, std::map<std::string, Term>& sol);

Term walk(const Term& t, const std::map<std::string, Term>& sol) {
  Term cur = t;
  while (cur.kind == TermKind::Variable) {
    auto it = sol.find(cur.name);
    if (it == sol.end()) break;
    cur = it->second;
  }
  return cur;
}

bool occurs_walked(const std::string& v, const Term& t, const std::map<std::string, Term>& sol) {
  Term w = walk(t, sol);
  if (w.kind == TermKind::Variable) return w.name == v;
  for (const Term& a : w.args)
    if (occurs_walked(v, a, sol)) return true;
  return false;
}

bool unify_rec(const Term& a0, const Term& b0, std::map<std::string, Term>& sol) {
  Term a = walk(a0, sol);
  Term b = walk(b0, sol);
  if (a.kind == TermKind::Variable) {
    if (b.kind == TermKind::Variable && b.name == a.name) return true;
    if (occurs_walked(a.name, b, sol)) return false;
    sol[a.name] = b;
    return true;
  }
  if (b.kind == TermKind::Variable) return unify_rec(b, a, sol);
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!unify_rec(a.args[i], b.args[i], sol)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> mgu(const std::vector<Term>& ts, const std::vector<Term>& ss) {
  if (ts.size() != ss.size()) return std::nullopt;
  std::map<std::string, Term> sol;
  for (size_t i = 0; i < ts.size(); ++i)
    if (!unify_rec(ts[i], ss[i], sol)) return std::nullopt;
  auto r = Substitution::make(std::move(sol));
  if (!r) return std::nullopt;
  return *r;
}

namespace {

bool match_rec(const Term& p, const Term& t, std::map<std::string, Term>& sol,
               std::vector<std::string>& trail) {
  if (p.kind == TermKind::Variable) {
    auto it = sol.find(p.name);
    if (it != sol.end()) return it->second == t;
    sol.emplace(p.name, t);
    trail.push_back(p.name);
    return true;
  }
  if (p.kind != t.kind || p.name != t.name || p.args.size() != t.args.size()) return false;
  for (size_t i = 0; i < p.args.size(); ++i)
    if (!match_rec(p.args[i], t.args[i], sol, trail)) return false;
  return true;
}

}  // namespace

bool match_extend(const Term& pattern, const Term& target,
                  std::map<std::string, Term>& bindings, std::vector<std::string>& trail) {
  size_t mark = trail.size();
  if (match_rec(pattern, target, bindings, trail)) return true;
  while (trail.size() > mark) {
    bindings.erase(trail.back());
    trail.pop_back();
  }
  return false;
}

std::optional<std::map<std::string, Term>> match_terms(const std::vector<Term>& pattern,
                                                       const std::vector<Term>& target) {
  if (pattern.size() != target.size()) return std::nullopt;
  std::map<std::string, Term> sol;
  std::vector<std::string> trail;
  for (size_t i = 0; i < pattern.size(); ++i)
    if (!match_rec(pattern[i], target[i], sol, trail)) return std::nullopt;
  return sol;
}

Term apply_once(const std::map<std::string, Term>& bindings, const Term& t) {
  return apply_bindings(bindings, t);
}

Literal apply_once(const std::map<std::string, Term>& bindings, const Literal& l) {
  Literal r = l;
  for (Term& t : r.args) t = apply_bindings(bindings, t);
  return r;
}

Clause rename_apart(const Clause& c, const std::set<std::string>& avoid) {
  std::set<std::string> own = c.variables();
  std::map<std::string, Term> renaming;
  std::set<std::string> taken = avoid;
  taken.insert(own.begin(), own.end());
  for (const std::string& v : own) {
    if (!avoid.count(v)) continue;
    std::string base = v;
    auto pos = base.rfind("_r");
    if (pos != std::string::npos && pos + 2 < base.size()) {
      bool digits = true;
      for (size_t i = pos + 2; i < base.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(base[i]))) digits = false;
      if (digits) base = base.substr(0, pos);
    }
    for (int k = 1;; ++k) {
      std::string cand = base + "_r" + std::to_string(k);
      if (!taken.count(cand)) {
        taken.insert(cand);
        renaming[v] = Term::var(cand);
        break;
      }
    }
  }
  if (renaming.empty()) return c;
  auto s = Substitution::make(std::move(renaming));
  Clause r = s->apply(c);
  return r;
}

}  // namespace wscan
