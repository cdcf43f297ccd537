#include "wscan/saturation.hpp"

#include <algorithm>
#include <cassert>

namespace wscan {

bool extended_purity_applicable(const ClauseSet& n, const std::string& x, char polarity) {
  bool any = false;
  for (const auto& [id, c] : n.clauses()) {
    (void)id;
    bool pos, neg;
    c.pred_var_polarities(x, pos, neg);
    if (!pos && !neg) continue;
    any = true;
    if (polarity == '+' && !pos) return false;
    if (polarity == '-' && !neg) return false;
  }
  return any;
}

std::optional<char> detect_extended_purity(const ClauseSet& n, const std::string& x) {
  if (extended_purity_applicable(n, x, '+')) return '+';
  if (extended_purity_applicable(n, x, '-')) return '-';
  return std::nullopt;
}

namespace {

int x_literal_count(const Clause& c) {
  int k = 0;
  for (const Literal& l : c.literals)
    if (l.is_pred_var()) ++k;
  return k;
}

std::uint64_t mix_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
  h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

struct AddState {
  Derivation* d;
  const SaturationConfig* cfg;
  int protect_id;  // the pointed clause being purified
  int budget = 0;
  bool limit = false;
  std::string error;
};

// Records the Res/Fac step for the raw clause, the eager simplification
// chain, the deletion of stale intermediates, deletions of clauses the new
// clause makes redundant, and the non-redundant constraint factors of the
// final form.
void add_with_simplification(AddState& st, DerivationStep producing_step) {
  if (st.limit || !st.error.empty()) return;
  if (++st.budget > st.cfg->max_purification_resolvents) {
    st.limit = true;
    return;
  }
  int raw_id = producing_step.result_id;
  if (auto r = st.d->push(producing_step); !r) {
    st.error = r.error();
    return;
  }

  // Constraint elimination and condensation to the fixpoint, each stage a
  // recorded step; ConstrElim keeps its premise, which is deleted afterwards
  // once the final form justifies it.
  std::vector<int> stale;
  int cur_id = raw_id;
  for (;;) {
    const Clause& cur = st.d->conclusion().at(cur_id);
    std::vector<int> block = invertible_constraint_block(cur);
    if (!block.empty()) {
      int next_id = st.d->conclusion().next_id();
      if (auto r = st.d->push(make_constr_elim_step(cur_id, std::move(block), next_id)); !r) {
        st.error = r.error();
        return;
      }
      stale.push_back(cur_id);
      cur_id = next_id;
      continue;
    }
    Clause cond = condense(cur);
    if (cond.literals.size() != cur.literals.size()) {
      int next_id = st.d->conclusion().next_id();
      RedundancyReason why{RedundancyReason::Kind::CondensedTo, 0};
      if (auto r = st.d->push(make_red_elim_step(cur_id, why, next_id)); !r) {
        st.error = r.error();
        return;
      }
      cur_id = next_id;
      continue;
    }
    break;
  }
  int final_id = cur_id;
  for (int id : stale) {
    RedundancyReason why{RedundancyReason::Kind::ElimSubsumedBy, final_id};
    if (auto r = st.d->push(make_red_elim_step(id, why)); !r) {
      st.error = r.error();
      return;
    }
  }

  // Backward deletion: older clauses the new one makes redundant.
  for (;;) {
    const ClauseSet& cur = st.d->conclusion();
    int victim = 0;
    RedundancyReason why;
    for (const auto& [id, c] : cur.clauses()) {
      if (id == final_id || id == st.protect_id) continue;
      if (auto r = redundant_in(c, cur); r) {
        victim = id;
        why = r;
        break;
      }
    }
    if (!victim) break;
    if (auto r = st.d->push(make_red_elim_step(victim, why)); !r) {
      st.error = r.error();
      return;
    }
    if (victim == final_id) break;
  }

  // The new clause may have been deleted backward if it became redundant
  // relative to something added in between.
  if (!st.d->conclusion().contains(final_id)) return;

  // Eager constraint factors of the new clause.
  const Clause snapshot = st.d->conclusion().at(final_id);
  std::vector<int> xlits;
  for (size_t i = 0; i < snapshot.literals.size(); ++i)
    if (snapshot.literals[i].is_pred_var()) xlits.push_back(static_cast<int>(i));
  for (size_t a = 0; a < xlits.size(); ++a) {
    for (size_t b = 0; b < xlits.size(); ++b) {
      if (a == b) continue;
      const Literal& la = snapshot.literals[static_cast<size_t>(xlits[a])];
      const Literal& lb = snapshot.literals[static_cast<size_t>(xlits[b])];
      if (la.pred != lb.pred || la.positive != lb.positive) continue;
      if (!st.d->conclusion().contains(final_id)) return;
      auto f = factor(st.d->conclusion().at(final_id), xlits[a], xlits[b]);
      if (!f) continue;
      if (redundant_in(*f, st.d->conclusion(), st.protect_id)) continue;
      int fid = st.d->conclusion().next_id();
      add_with_simplification(st, make_fac_step(final_id, xlits[a], xlits[b], fid));
      if (st.limit || !st.error.empty()) return;
    }
  }
}

}  // namespace

PurifyResult purify(const ClauseSet& n, const ClauseLitRef& p, const SaturationConfig& cfg) {
  PurifyResult out;
  const Clause* pc = n.find(p.clause_id);
  if (!pc || p.lit_index < 0 || static_cast<size_t>(p.lit_index) >= pc->literals.size() ||
      !pc->literals[static_cast<size_t>(p.lit_index)].is_pred_var()) {
    out.error = "purify: not an X-pointed clause of the set";
    return out;
  }
  Derivation d(n);
  AddState st{&d, &cfg, p.clause_id, 0, false, {}};

  for (;;) {
    bool added = false;
    const Literal& lp =
        d.conclusion().at(p.clause_id).literals[static_cast<size_t>(p.lit_index)];
    std::vector<int> partners = d.conclusion().occurrences(lp.pred, !lp.positive);
    for (int qid : partners) {
      if (qid == p.clause_id) continue;
      if (!d.conclusion().contains(qid)) continue;  // deleted by an earlier round
      size_t lits = d.conclusion().at(qid).literals.size();
      for (size_t j = 0; j < lits; ++j) {
        if (!d.conclusion().contains(qid)) break;
        const Clause& q = d.conclusion().at(qid);
        const Literal& lq = q.literals[j];
        if (!lq.is_pred_var() || lq.pred != lp.pred || lq.positive == lp.positive) continue;
        const Clause& pcur = d.conclusion().at(p.clause_id);
        auto r = resolvent(pcur, p.lit_index, q, static_cast<int>(j));
        assert(r.ok());
        if (redundant_in(*r, d.conclusion(), p.clause_id)) continue;
        add_with_simplification(
            st, make_res_step(p, ClauseLitRef{qid, static_cast<int>(j)},
                              d.conclusion().next_id()));
        if (st.limit) {
          out.limit_exceeded = true;
          return out;
        }
        if (!st.error.empty()) {
          out.error = st.error;
          return out;
        }
        added = true;
      }
    }
    if (!added) break;
  }

  if (auto r = d.push(make_pur_del_step(p)); !r) {
    out.error = r.error();
    return out;
  }
  out.ok = true;
  out.steps = d.steps();
  return out;
}

std::vector<ClauseLitRef> candidate_pointed(const ClauseSet& n, const SaturationConfig& cfg) {
  struct Entry {
    ClauseLitRef ref;
    bool not_one_sided;
    int x_count;
    bool not_unit;
    std::uint64_t tie;
  };
  std::vector<Entry> entries;
  for (const auto& [id, c] : n.clauses()) {
    for (size_t i = 0; i < c.literals.size(); ++i) {
      if (!c.literals[i].is_pred_var()) continue;
      PointedClause pc{c, static_cast<int>(i)};
      bool os = one_sided(pc);
      if (cfg.one_sided_only && !os) continue;
      std::uint64_t tie = cfg.seed ? mix_hash(cfg.seed, static_cast<std::uint64_t>(id), i) : 0;
      entries.push_back(
          {{id, static_cast<int>(i)}, !os, x_literal_count(c), c.literals.size() != 1, tie});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [&cfg](const Entry& a, const Entry& b) {
    auto key = [&cfg](const Entry& e) {
      switch (cfg.selection) {
        case Selection::PreferOneSided:
          return std::tuple<int, int, int, std::uint64_t, int, int>(
              e.not_one_sided, e.x_count, 0, e.tie, e.ref.clause_id, e.ref.lit_index);
        case Selection::FewestXLiterals:
          return std::tuple<int, int, int, std::uint64_t, int, int>(
              e.x_count, 0, 0, e.tie, e.ref.clause_id, e.ref.lit_index);
        case Selection::PreferUnit:
          return std::tuple<int, int, int, std::uint64_t, int, int>(
              e.not_unit, 0, 0, e.tie, e.ref.clause_id, e.ref.lit_index);
        case Selection::InputOrder:
          return std::tuple<int, int, int, std::uint64_t, int, int>(
              0, 0, 0, e.tie, e.ref.clause_id, e.ref.lit_index);
      }
      return std::tuple<int, int, int, std::uint64_t, int, int>(0, 0, 0, 0, 0, 0);
    };
    return key(a) < key(b);
  });
  std::vector<ClauseLitRef> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) out.push_back(e.ref);
  return out;
}

namespace {

// The first extended purity deletion available, in declared variable order.
std::optional<DerivationStep> ext_purity_step(const ClauseSet& cur, const Signature& sig) {
  for (const auto& [x, arity] : sig.predicate_variables()) {
    (void)arity;
    if (!cur.contains_pred_var(x)) continue;
    auto pol = detect_extended_purity(cur, x);
    if (pol) return make_ext_pur_del_step(x, *pol, cur.clauses_with(x));
  }
  return std::nullopt;
}

}  // namespace

SaturateResult saturate(const ClauseSet& n, const Signature& sig,
                        const SaturationConfig& cfg) {
  SaturateResult res;
  res.derivation = Derivation(n);
  Derivation& d = res.derivation;
  for (;;) {
    const ClauseSet& cur = d.conclusion();
    if (!cur.contains_any_pred_var(sig.predicate_variables())) {
      res.status = SaturateResult::Status::Eliminated;
      return res;
    }
    if (static_cast<int>(d.length()) >= cfg.max_steps) {
      res.status = SaturateResult::Status::Limit;
      res.detail = "derivation step limit reached";
      return res;
    }
    if (auto ext = ext_purity_step(cur, sig)) {
      if (auto r = d.push(*ext); !r) {
        res.status = SaturateResult::Status::Stuck;
        res.detail = r.error();
        return res;
      }
      continue;
    }
    std::vector<ClauseLitRef> cands = candidate_pointed(cur, cfg);
    if (cands.empty()) {
      res.status = SaturateResult::Status::Stuck;
      res.detail = cfg.one_sided_only
                       ? "predicate variables remain but no one-sided pointed clause exists"
                       : "predicate variables remain but no pointed clause exists";
      return res;
    }
    PurifyResult pr = purify(cur, cands.front(), cfg);
    if (pr.limit_exceeded) {
      res.status = SaturateResult::Status::Limit;
      res.detail = "purification resolvent limit reached";
      return res;
    }
    if (!pr.ok) {
      res.status = SaturateResult::Status::Stuck;
      res.detail = pr.error;
      return res;
    }
    for (const DerivationStep& s : pr.steps) {
      if (static_cast<int>(d.length()) >= cfg.max_steps) {
        res.status = SaturateResult::Status::Limit;
        res.detail = "derivation step limit reached";
        return res;
      }
      if (auto r = d.push(s); !r) {
        res.status = SaturateResult::Status::Stuck;
        res.detail = r.error();
        return res;
      }
    }
  }
}

namespace {

struct EnumState {
  const Signature* sig;
  const SaturationConfig* cfg;
  const std::function<bool(const Derivation&)>* fn;
  int yielded = 0;
  int visited = 0;
};

// Returns false to abort the whole enumeration.
bool enum_rec(EnumState& st, Derivation& d) {
  if (st.yielded >= st.cfg->enumerate_limit) return false;
  if (++st.visited > st.cfg->enumerate_node_budget) return false;
  const ClauseSet& cur = d.conclusion();
  if (!cur.contains_any_pred_var(st.sig->predicate_variables())) {
    ++st.yielded;
    return (*st.fn)(d);
  }
  if (static_cast<int>(d.length()) >= st.cfg->max_steps) return true;  // prune

  // Branch on every available extended purity deletion (both polarities can
  // be available and lead to different witnesses).
  for (const auto& [x, arity] : st.sig->predicate_variables()) {
    (void)arity;
    if (!cur.contains_pred_var(x)) continue;
    for (char pol : {'+', '-'}) {
      if (!extended_purity_applicable(cur, x, pol)) continue;
      DerivationStep s = make_ext_pur_del_step(x, pol, cur.clauses_with(x));
      if (auto r = d.push(s); !r) continue;
      bool go = enum_rec(st, d);
      d.pop();
      if (!go) return false;
    }
  }

  for (const ClauseLitRef& p : candidate_pointed(cur, *st.cfg)) {
    PurifyResult pr = purify(d.conclusion(), p, *st.cfg);
    if (!pr.ok) continue;  // limit or dead branch
    size_t pushed = 0;
    bool fits = true;
    for (const DerivationStep& s : pr.steps) {
      if (static_cast<int>(d.length()) >= st.cfg->max_steps) {
        fits = false;
        break;
      }
      auto r = d.push(s);
      if (!r) {
        fits = false;
        break;
      }
      ++pushed;
    }
    bool go = true;
    if (fits) go = enum_rec(st, d);
    for (size_t i = 0; i < pushed; ++i) d.pop();
    if (!go) return false;
  }
  return true;
}

}  // namespace

void enumerate_derivations(const ClauseSet& n, const Signature& sig,
                           const SaturationConfig& cfg,
                           const std::function<bool(const Derivation&)>& fn) {
  EnumState st{&sig, &cfg, &fn, 0, 0};
  Derivation d(n);
  enum_rec(st, d);
}

std::vector<Derivation> enumerate_derivations_collect(const ClauseSet& n, const Signature& sig,
                                                      const SaturationConfig& cfg) {
  std::vector<Derivation> out;
  enumerate_derivations(n, sig, cfg, [&out](const Derivation& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

}  // namespace wscan
