#include "wscan/closure.hpp"

#include <cassert>

#include "wscan/clause_set.hpp"

namespace wscan {

UnitClosure unit_closure(const PointedClause& p, Signature& sig, int depth_limit) {
  UnitClosure u;
  u.pointed = p;
  const Literal& lp = p.literal();
  assert(lp.is_pred_var());

  std::vector<Term> cs;
  for (size_t i = 0; i < lp.args.size(); ++i) {
    u.fresh_constants.push_back(sig.fresh_constant());
    cs.push_back(Term::constant(u.fresh_constants.back()));
  }
  Clause seed;
  seed.literals.push_back(Literal::pred_var(!lp.positive, lp.pred, cs));

  ClauseSet set;
  int seed_id = set.add(seed);
  u.raw_clauses.push_back(set.at(seed_id));

  Clause pclause = p.clause;
  pclause.id = 0;

  std::vector<int> frontier{seed_id};
  u.complete = false;
  for (int round = 0; round < depth_limit && !frontier.empty(); ++round) {
    std::vector<int> next;
    for (int cid : frontier) {
      if (!set.contains(cid)) continue;  // removed backward in this round
      size_t lits = set.at(cid).literals.size();
      for (size_t j = 0; j < lits; ++j) {
        if (!set.contains(cid)) break;
        const Clause& c = set.at(cid);
        const Literal& lc = c.literals[j];
        if (!lc.is_pred_var() || lc.pred != lp.pred || lc.positive == lp.positive) continue;
        auto raw = resolvent(pclause, p.designated, c, static_cast<int>(j));
        assert(raw.ok());
        u.raw_clauses.push_back(*raw);
        Clause f = canonical_form(*raw);
        f.id = 0;
        if (redundant_in(f, set)) continue;
        int fid = set.add(std::move(f));
        next.push_back(fid);
        // Same redundancy engine as saturation: drop older clauses the new
        // one subsumes.
        for (;;) {
          int victim = 0;
          for (const auto& [id, d] : set.clauses()) {
            if (id == fid) continue;
            if (redundant_in(d, set)) {
              victim = id;
              break;
            }
          }
          if (!victim) break;
          set.remove(victim);
        }
      }
    }
    frontier = std::move(next);
  }
  u.complete = frontier.empty();

  for (const auto& [id, c] : set.clauses()) {
    (void)id;
    Clause out = c;
    out.id = 0;
    u.clauses.push_back(std::move(out));
  }
  return u;
}

Term replace_constants(const Term& t, const std::map<std::string, Term>& map) {
  if (t.kind == TermKind::Constant) {
    auto it = map.find(t.name);
    return it == map.end() ? t : it->second;
  }
  Term r = t;
  for (Term& a : r.args) a = replace_constants(a, map);
  return r;
}

Clause replace_constants(const Clause& c, const std::map<std::string, Term>& map) {
  Clause r = c;
  for (Literal& l : r.literals)
    for (Term& t : l.args) t = replace_constants(t, map);
  return r;
}

namespace {

std::vector<std::string> pick_params(size_t n, const std::set<std::string>& avoid) {
  static const char* bases[] = {"u", "v", "w"};
  std::vector<std::string> out;
  std::set<std::string> taken = avoid;
  size_t idx = 0;
  for (size_t got = 0; got < n; ++idx) {
    std::string cand = bases[idx % 3];
    if (idx >= 3) cand += std::to_string(idx / 3);
    if (taken.count(cand)) continue;
    taken.insert(cand);
    out.push_back(cand);
    ++got;
  }
  return out;
}

}  // namespace

PredicateExpression res_predicate(const UnitClosure& u) {
  const Literal& lp = u.pointed.literal();
  bool negative_designated = !lp.positive;

  std::set<std::string> avoid;
  for (const Clause& c : u.clauses) {
    auto vs = c.variables();
    avoid.insert(vs.begin(), vs.end());
  }
  std::vector<std::string> params = pick_params(u.fresh_constants.size(), avoid);

  std::map<std::string, Term> abstraction;
  for (size_t i = 0; i < u.fresh_constants.size(); ++i)
    abstraction[u.fresh_constants[i]] = Term::var(params[i]);

  std::vector<Formula> parts;
  for (const Clause& c : u.clauses) {
    Clause abstracted = replace_constants(c, abstraction);
    std::set<std::string> vs = abstracted.variables();
    for (const std::string& prm : params) vs.erase(prm);
    Formula body =
        negative_designated ? clause_formula(abstracted) : negated_clause_formula(abstracted);
    for (auto it = vs.rbegin(); it != vs.rend(); ++it)
      body = negative_designated ? f_forall(*it, std::move(body))
                                 : f_exists(*it, std::move(body));
    parts.push_back(std::move(body));
  }
  if (!u.complete) parts.push_back(f_truncated());

  PredicateExpression e;
  e.params = std::move(params);
  if (parts.size() == 1) {
    e.body = std::move(parts[0]);
  } else {
    e.body = negative_designated ? f_and(std::move(parts)) : f_or(std::move(parts));
  }
  e.first_order = u.complete;
  e.truncated = !u.complete;
  return e;
}

}  // namespace wscan
