#include "wscan/calculus.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace wscan {

Expected<Clause> resolvent(const Clause& p, int p_idx, const Clause& q, int q_idx) {
  if (p_idx < 0 || static_cast<size_t>(p_idx) >= p.literals.size() || q_idx < 0 ||
      static_cast<size_t>(q_idx) >= q.literals.size())
    return Expected<Clause>::fail("resolution: literal index out of range");
  const Literal& lp = p.literals[static_cast<size_t>(p_idx)];
  if (!lp.is_pred_var())
    return Expected<Clause>::fail("resolution: designated literal is not an X-literal");
  Clause q2 = rename_apart(q, p.variables());
  const Literal& lq = q2.literals[static_cast<size_t>(q_idx)];
  if (!lq.is_pred_var() || lq.pred != lp.pred)
    return Expected<Clause>::fail("resolution: predicate variables differ");
  if (lq.positive == lp.positive)
    return Expected<Clause>::fail("resolution: literals have the same polarity");

  Clause r;
  r.origin.kind = OriginKind::Resolvent;
  r.origin.parents = {p.id, q.id};
  r.origin.designated = {p_idx, q_idx};
  for (size_t k = 0; k < lp.args.size(); ++k)
    r.literals.push_back(Literal::equality(false, lp.args[k], lq.args[k]));
  for (size_t k = 0; k < p.literals.size(); ++k)
    if (static_cast<int>(k) != p_idx) r.literals.push_back(p.literals[k]);
  for (size_t k = 0; k < q2.literals.size(); ++k)
    if (static_cast<int>(k) != q_idx) r.literals.push_back(q2.literals[k]);
  return r;
}

Expected<Clause> factor(const Clause& c, int i, int j) {
  if (i < 0 || j < 0 || i == j || static_cast<size_t>(i) >= c.literals.size() ||
      static_cast<size_t>(j) >= c.literals.size())
    return Expected<Clause>::fail("factoring: bad literal indices");
  const Literal& li = c.literals[static_cast<size_t>(i)];
  const Literal& lj = c.literals[static_cast<size_t>(j)];
  if (!li.is_pred_var() || !lj.is_pred_var() || li.pred != lj.pred ||
      li.positive != lj.positive)
    return Expected<Clause>::fail(
        "factoring: literals are not same-polarity occurrences of one predicate variable");

  Clause r;
  r.origin.kind = OriginKind::Factor;
  r.origin.parents = {c.id};
  for (size_t k = 0; k < li.args.size(); ++k)
    r.literals.push_back(Literal::equality(false, li.args[k], lj.args[k]));
  for (size_t k = 0; k < c.literals.size(); ++k)
    if (static_cast<int>(k) != j) r.literals.push_back(c.literals[k]);
  return r;
}

std::optional<Substitution> constraint_block_mgu(const Clause& c,
                                                const std::vector<int>& block) {
  std::vector<Term> lhs, rhs;
  for (int i : block) {
    if (i < 0 || static_cast<size_t>(i) >= c.literals.size()) return std::nullopt;
    const Literal& l = c.literals[static_cast<size_t>(i)];
    if (!l.is_constraint()) return std::nullopt;
    lhs.push_back(l.args[0]);
    rhs.push_back(l.args[1]);
  }
  if (block.empty()) return std::nullopt;
  return mgu(lhs, rhs);
}

std::optional<Clause> constraint_eliminate(const Clause& c, const std::vector<int>& block) {
  auto sigma = constraint_block_mgu(c, block);
  if (!sigma) return std::nullopt;
  Clause r;
  r.origin.kind = OriginKind::ConstraintElim;
  r.origin.parents = {c.id};
  std::set<int> drop(block.begin(), block.end());
  for (size_t k = 0; k < c.literals.size(); ++k)
    if (!drop.count(static_cast<int>(k))) r.literals.push_back(sigma->apply(c.literals[k]));
  return r;
}

std::vector<int> invertible_constraint_block(const Clause& c) {
  // Solve the conjunction of the clause's disequation sides by variable
  // elimination only. Constraints whose solution would need to decompose a
  // function application are left in place.
  std::vector<int> block;
  std::map<std::string, Term> sol;
  auto deref = [&sol](Term t) {
    while (t.kind == TermKind::Variable && sol.count(t.name)) t = sol.at(t.name);
    return t;
  };
  std::function<Term(const Term&)> resolve = [&](const Term& t) -> Term {
    Term w = deref(t);
    if (w.kind == TermKind::Application)
      for (Term& a : w.args) a = resolve(a);
    return w;
  };
  for (size_t i = 0; i < c.literals.size(); ++i) {
    const Literal& l = c.literals[i];
    if (!l.is_constraint()) continue;
    Term a = resolve(l.args[0]);
    Term b = resolve(l.args[1]);
    if (a == b) {
      block.push_back(static_cast<int>(i));
      continue;
    }
    if (a.kind == TermKind::Variable && !occurs_in(a.name, b)) {
      sol[a.name] = b;
      block.push_back(static_cast<int>(i));
      continue;
    }
    if (b.kind == TermKind::Variable && !occurs_in(b.name, a)) {
      sol[b.name] = a;
      block.push_back(static_cast<int>(i));
      continue;
    }
  }
  return block;
}

bool is_tautology(const Clause& c) {
  for (size_t i = 0; i < c.literals.size(); ++i) {
    const Literal& l = c.literals[i];
    if (l.positive && l.is_equality() && l.args[0] == l.args[1]) return true;
    for (size_t j = i + 1; j < c.literals.size(); ++j) {
      const Literal& m = c.literals[j];
      if (l.positive != m.positive && l.same_atom(m)) return true;
    }
  }
  return false;
}

namespace {

// Matches one pattern literal against one target literal, extending the
// shared binding map; equality atoms may match in either orientation.
// Bindings added for a failed branch are rolled back via the trail.
bool match_literal(const Literal& pat, const Literal& tgt,
                   std::map<std::string, Term>& bind,
                   const std::function<bool()>& cont) {
  if (pat.positive != tgt.positive || pat.atom != tgt.atom) return false;
  if (pat.atom != AtomKind::Equality && pat.pred != tgt.pred) return false;
  if (pat.args.size() != tgt.args.size()) return false;

  auto try_order = [&](const std::vector<const Term*>& targets) {
    std::vector<std::string> trail;
    bool ok = true;
    for (size_t k = 0; k < pat.args.size() && ok; ++k)
      ok = match_extend(pat.args[k], *targets[k], bind, trail);
    if (ok && cont()) return true;
    while (!trail.empty()) {
      bind.erase(trail.back());
      trail.pop_back();
    }
    return false;
  };

  std::vector<const Term*> in_order;
  in_order.reserve(tgt.args.size());
  for (const Term& t : tgt.args) in_order.push_back(&t);
  if (try_order(in_order)) return true;
  if (pat.atom == AtomKind::Equality)
    return try_order({&tgt.args[1], &tgt.args[0]});
  return false;
}

bool subsumes_rec(const std::vector<Literal>& pat, size_t i, const std::vector<Literal>& tgt,
                  std::vector<bool>& used, std::map<std::string, Term>& bind) {
  if (i == pat.size()) return true;
  for (size_t j = 0; j < tgt.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    bool ok = match_literal(pat[i], tgt[j], bind,
                            [&]() { return subsumes_rec(pat, i + 1, tgt, used, bind); });
    used[j] = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool subsumes(const Clause& c, const Clause& d) {
  if (c.literals.size() > d.literals.size()) return false;
  std::vector<bool> used(d.literals.size(), false);
  std::map<std::string, Term> bind;
  return subsumes_rec(c.literals, 0, d.literals, used, bind);
}

namespace {

// Set-based theta-subsumption: some instance of every literal of pat occurs
// in tgt (several pattern literals may collapse onto one target literal).
bool subsumes_set_rec(const std::vector<Literal>& pat, size_t i,
                      const std::vector<Literal>& tgt, std::map<std::string, Term>& bind) {
  if (i == pat.size()) return true;
  for (size_t j = 0; j < tgt.size(); ++j) {
    if (match_literal(pat[i], tgt[j], bind,
                      [&]() { return subsumes_set_rec(pat, i + 1, tgt, bind); }))
      return true;
  }
  return false;
}

bool subsumes_onto(const Clause& c, const Clause& d) {
  std::map<std::string, Term> bind;
  return subsumes_set_rec(c.literals, 0, d.literals, bind);
}

}  // namespace

Clause condense(const Clause& c) {
  // A literal may go when the remaining subclause is an instance-image of
  // the whole clause; the subclause then both implies and is implied by it.
  Clause cur = c;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < cur.literals.size(); ++i) {
      Clause cand = cur;
      cand.literals.erase(cand.literals.begin() + static_cast<long>(i));
      if (subsumes_onto(cur, cand)) {
        cur = std::move(cand);
        changed = true;
        break;
      }
    }
  }
  if (cur.literals.size() == c.literals.size()) return c;
  cur.id = 0;
  cur.origin.kind = OriginKind::Condensation;
  cur.origin.parents = {c.id};
  return cur;
}

Clause canonical_form(const Clause& c) {
  Clause cur = c;
  for (;;) {
    std::vector<int> block = invertible_constraint_block(cur);
    if (!block.empty()) {
      auto elim = constraint_eliminate(cur, block);
      if (elim) {
        elim->id = cur.id;
        elim->origin = cur.origin;
        cur = std::move(*elim);
        continue;
      }
    }
    Clause cond = condense(cur);
    if (cond.literals.size() != cur.literals.size()) {
      cond.id = cur.id;
      cond.origin = cur.origin;
      cur = std::move(cond);
      continue;
    }
    return cur;
  }
}

RedundancyReason redundant_in(const Clause& c, const ClauseSet& n, int exclude_id) {
  if (is_tautology(c)) return {RedundancyReason::Kind::Tautology, 0};
  for (const auto& [id, d] : n.clauses()) {
    if (id == c.id || id == exclude_id) continue;
    if (subsumes(d, c)) return {RedundancyReason::Kind::SubsumedBy, id};
  }
  Clause simplified = canonical_form(c);
  if (simplified.literals.size() != c.literals.size()) {
    if (is_tautology(simplified)) return {RedundancyReason::Kind::Tautology, 0};
    for (const auto& [id, d] : n.clauses()) {
      if (id == c.id || id == exclude_id) continue;
      if (subsumes(d, simplified)) return {RedundancyReason::Kind::ElimSubsumedBy, id};
    }
  }
  return {};
}

bool DerivationStep::operator==(const DerivationStep& o) const {
  return kind == o.kind && p1 == o.p1 && p2 == o.p2 && premise_id == o.premise_id &&
         indices == o.indices && result_id == o.result_id && removed_id == o.removed_id &&
         reason.kind == o.reason.kind && reason.by_id == o.reason.by_id &&
         pred_var == o.pred_var && polarity == o.polarity && removed_ids == o.removed_ids;
}

DerivationStep make_res_step(ClauseLitRef p, ClauseLitRef q, int result_id) {
  DerivationStep s;
  s.kind = StepKind::Res;
  s.p1 = p;
  s.p2 = q;
  s.result_id = result_id;
  return s;
}

DerivationStep make_fac_step(int premise, int i, int j, int result_id) {
  DerivationStep s;
  s.kind = StepKind::Fac;
  s.premise_id = premise;
  s.indices = {i, j};
  s.result_id = result_id;
  return s;
}

DerivationStep make_constr_elim_step(int premise, std::vector<int> block, int result_id) {
  DerivationStep s;
  s.kind = StepKind::ConstrElim;
  s.premise_id = premise;
  s.indices = std::move(block);
  s.result_id = result_id;
  return s;
}

DerivationStep make_red_elim_step(int removed, RedundancyReason reason, int result_id) {
  DerivationStep s;
  s.kind = StepKind::RedElim;
  s.removed_id = removed;
  s.reason = reason;
  s.result_id = result_id;
  return s;
}

DerivationStep make_ext_pur_del_step(std::string pred_var, char polarity,
                                     std::vector<int> removed) {
  DerivationStep s;
  s.kind = StepKind::ExtPurDel;
  s.pred_var = std::move(pred_var);
  s.polarity = polarity;
  s.removed_ids = std::move(removed);
  return s;
}

DerivationStep make_pur_del_step(ClauseLitRef p) {
  DerivationStep s;
  s.kind = StepKind::PurDel;
  s.p1 = p;
  return s;
}

std::vector<Clause> all_resolvents_with(const ClauseSet& n, const ClauseLitRef& p) {
  std::vector<Clause> out;
  const Clause* pc = n.find(p.clause_id);
  if (!pc) return out;
  const Literal& lp = pc->literals[static_cast<size_t>(p.lit_index)];
  for (int qid : n.occurrences(lp.pred, !lp.positive)) {
    if (qid == p.clause_id) continue;
    const Clause& q = n.at(qid);
    for (size_t j = 0; j < q.literals.size(); ++j) {
      const Literal& lq = q.literals[j];
      if (!lq.is_pred_var() || lq.pred != lp.pred || lq.positive == lp.positive) continue;
      auto r = resolvent(*pc, p.lit_index, q, static_cast<int>(j));
      assert(r.ok());
      out.push_back(*r);
    }
  }
  return out;
}

namespace {

std::string describe_ref(const ClauseLitRef& r) {
  return std::to_string(r.clause_id) + "." + std::to_string(r.lit_index + 1);
}

Expected<ClauseSet> fail_step(const std::string& what) {
  return Expected<ClauseSet>::fail("illegal step: " + what);
}

}  // namespace

std::string step_to_string(const DerivationStep& s, const ClauseSet& before) {
  switch (s.kind) {
    case StepKind::Res:
      return "Res(" + describe_ref(s.p1) + "," + describe_ref(s.p2) + ") -> " +
             std::to_string(s.result_id);
    case StepKind::Fac:
      return "Fac(" + std::to_string(s.premise_id) + ") -> " + std::to_string(s.result_id);
    case StepKind::ConstrElim:
      return "ConstrElim(" + std::to_string(s.premise_id) + ") -> " +
             std::to_string(s.result_id);
    case StepKind::RedElim: {
      std::string why;
      switch (s.reason.kind) {
        case RedundancyReason::Kind::Tautology: why = "tautology"; break;
        case RedundancyReason::Kind::SubsumedBy:
          why = "subsumed by " + std::to_string(s.reason.by_id);
          break;
        case RedundancyReason::Kind::ElimSubsumedBy:
          why = "subsumed by " + std::to_string(s.reason.by_id) + " after constraint elimination";
          break;
        case RedundancyReason::Kind::CondensedTo:
          why = "condensed to " + std::to_string(s.result_id);
          break;
        default: why = "?";
      }
      return "RedElim(" + std::to_string(s.removed_id) + ": " + why + ")";
    }
    case StepKind::ExtPurDel:
      return std::string("ExtPurDel_") + s.pred_var + "^" + s.polarity;
    case StepKind::PurDel: {
      const Clause* c = before.find(s.p1.clause_id);
      (void)c;
      return "PurDel(" + describe_ref(s.p1) + ")";
    }
  }
  return "?";
}

Expected<ClauseSet> apply_step(const ClauseSet& n, const DerivationStep& s) {
  switch (s.kind) {
    case StepKind::Res: {
      const Clause* p = n.find(s.p1.clause_id);
      const Clause* q = n.find(s.p2.clause_id);
      if (!p || !q) return fail_step("Res: premise not in clause set");
      auto r = resolvent(*p, s.p1.lit_index, *q, s.p2.lit_index);
      if (!r) return fail_step(r.error());
      if (s.result_id != n.next_id())
        return fail_step("Res: result id " + std::to_string(s.result_id) +
                         " does not match next id " + std::to_string(n.next_id()));
      ClauseSet out = n;
      r->id = s.result_id;
      out.add(std::move(*r));
      return out;
    }
    case StepKind::Fac: {
      const Clause* c = n.find(s.premise_id);
      if (!c) return fail_step("Fac: premise not in clause set");
      if (s.indices.size() != 2) return fail_step("Fac: needs two literal indices");
      auto r = factor(*c, s.indices[0], s.indices[1]);
      if (!r) return fail_step(r.error());
      if (s.result_id != n.next_id()) return fail_step("Fac: result id mismatch");
      ClauseSet out = n;
      r->id = s.result_id;
      out.add(std::move(*r));
      return out;
    }
    case StepKind::ConstrElim: {
      const Clause* c = n.find(s.premise_id);
      if (!c) return fail_step("ConstrElim: premise not in clause set");
      auto r = constraint_eliminate(*c, s.indices);
      if (!r) return fail_step("ConstrElim: selected block has no unifier");
      if (s.result_id != n.next_id()) return fail_step("ConstrElim: result id mismatch");
      ClauseSet out = n;
      r->id = s.result_id;
      out.add(std::move(*r));
      return out;
    }
    case StepKind::RedElim: {
      const Clause* c = n.find(s.removed_id);
      if (!c) return fail_step("RedElim: clause not in clause set");
      if (s.reason.kind == RedundancyReason::Kind::CondensedTo) {
        Clause cond = condense(*c);
        if (cond.literals.size() == c->literals.size())
          return fail_step("RedElim: clause is not condensable");
        if (s.result_id != n.next_id()) return fail_step("RedElim: condensation id mismatch");
        ClauseSet out = n;
        cond.id = s.result_id;
        out.add(std::move(cond));
        out.remove(s.removed_id);
        return out;
      }
      RedundancyReason why = redundant_in(*c, n);
      if (!why) return fail_step("RedElim: clause " + std::to_string(s.removed_id) +
                                 " is not redundant");
      ClauseSet out = n;
      out.remove(s.removed_id);
      return out;
    }
    case StepKind::ExtPurDel: {
      if (s.polarity != '+' && s.polarity != '-')
        return fail_step("ExtPurDel: polarity must be + or -");
      std::vector<int> removed;
      for (const auto& [id, c] : n.clauses()) {
        bool pos, neg;
        c.pred_var_polarities(s.pred_var, pos, neg);
        if (!pos && !neg) continue;
        bool has_p = (s.polarity == '+') ? pos : neg;
        if (!has_p)
          return fail_step("ExtPurDel: clause " + std::to_string(id) + " contains " +
                           s.pred_var + " without polarity " + s.polarity);
        removed.push_back(id);
      }
      if (removed != s.removed_ids)
        return fail_step("ExtPurDel: recorded removed ids do not match the clause set");
      ClauseSet out = n;
      for (int id : removed) out.remove(id);
      return out;
    }
    case StepKind::PurDel: {
      const Clause* p = n.find(s.p1.clause_id);
      if (!p) return fail_step("PurDel: pointed clause not in clause set");
      if (s.p1.lit_index < 0 ||
          static_cast<size_t>(s.p1.lit_index) >= p->literals.size())
        return fail_step("PurDel: designated index out of range");
      if (!p->literals[static_cast<size_t>(s.p1.lit_index)].is_pred_var())
        return fail_step("PurDel: designated literal is not an X-literal");
      ClauseSet rest = n;
      rest.remove(s.p1.clause_id);
      for (const Clause& r : all_resolvents_with(n, s.p1)) {
        if (!redundant_in(r, rest))
          return fail_step("PurDel(" + describe_ref(s.p1) + "): resolvent '" +
                           clause_to_string(r) + "' is not redundant");
      }
      return rest;
    }
  }
  return fail_step("unknown step kind");
}

}  // namespace wscan
