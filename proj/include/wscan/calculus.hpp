#ifndef WSCAN_CALCULUS_HPP
#define WSCAN_CALCULUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "wscan/clause_set.hpp"
#include "wscan/expected.hpp"
#include "wscan/subst.hpp"

namespace wscan {

// Constraint resolution: premises are renamed apart internally (the second
// premise is the one renamed), no unification is performed; the resolvent is
// t != s | C | C' with the designated tuples kept as explicit disequations.
Expected<Clause> resolvent(const Clause& p, int p_idx, const Clause& q, int q_idx);

// Constraint factoring on literals i, j (same predicate variable, same
// polarity): t != s | C \ {L(s)} keeping L(t).
Expected<Clause> factor(const Clause& c, int i, int j);

// Constraint elimination on the selected block of constraint literals;
// returns (C without the block) under the block's most general unifier,
// nullopt when the sides do not unify.
std::optional<Clause> constraint_eliminate(const Clause& c, const std::vector<int>& block);

// The substitution constraint_eliminate would apply, for step validation.
std::optional<Substitution> constraint_block_mgu(const Clause& c, const std::vector<int>& block);

// Largest constraint block solvable by variable elimination alone (trivial
// equations and var-to-term bindings, no decomposition of applications).
// Only such eliminations are equivalence-preserving, so only they may
// justify deleting the premise as redundant.
std::vector<int> invertible_constraint_block(const Clause& c);

bool is_tautology(const Clause& c);

// sigma-subsumption with sub-multiset containment; equality literals match
// up to symmetry.
bool subsumes(const Clause& c, const Clause& d);

// Minimal sub-multiset that subsumes the clause; deterministic via
// leftmost-first literal removal.
Clause condense(const Clause& c);

struct RedundancyReason {
  enum class Kind { None, Tautology, SubsumedBy, ElimSubsumedBy, CondensedTo };
  Kind kind = Kind::None;
  int by_id = 0;

  explicit operator bool() const { return kind != Kind::None; }
};

// True iff c is a tautology, subsumed by a clause of n (other than itself),
// or invertibly constraint-eliminates/condenses to a clause subsumed by n.
// Guarantees |= n -> c. exclude_id names a clause that may not serve as the
// subsumer (used to check redundancy in n minus the pointed clause).
RedundancyReason redundant_in(const Clause& c, const ClauseSet& n, int exclude_id = -1);

// Fully simplified form of a clause: exhaustive invertible constraint
// elimination followed by condensation, to a fixpoint.
Clause canonical_form(const Clause& c);

enum class StepKind { Res, Fac, ConstrElim, RedElim, ExtPurDel, PurDel };

struct DerivationStep {
  StepKind kind = StepKind::Res;

  // Res: the two premises with their designated literals (p1 is the pointed
  // clause whose purification produced the step). PurDel: p1 only.
  ClauseLitRef p1, p2;

  // Fac (two literal indices) / ConstrElim (constraint block indices).
  int premise_id = 0;
  std::vector<int> indices;

  // Id of the clause added by Res / Fac / ConstrElim, and of the condensed
  // replacement for RedElim(CondensedTo).
  int result_id = 0;

  // RedElim.
  int removed_id = 0;
  RedundancyReason reason;

  // ExtPurDel.
  std::string pred_var;
  char polarity = '+';
  std::vector<int> removed_ids;

  bool operator==(const DerivationStep& o) const;
};

DerivationStep make_res_step(ClauseLitRef p, ClauseLitRef q, int result_id);
DerivationStep make_fac_step(int premise, int i, int j, int result_id);
DerivationStep make_constr_elim_step(int premise, std::vector<int> block, int result_id);
DerivationStep make_red_elim_step(int removed, RedundancyReason reason, int result_id = 0);
DerivationStep make_ext_pur_del_step(std::string pred_var, char polarity,
                                     std::vector<int> removed);
DerivationStep make_pur_del_step(ClauseLitRef p);

std::string step_to_string(const DerivationStep& s, const ClauseSet& before);

// Validates the step against its preconditions and returns the successor
// clause set; the error names the violated precondition. The successor is a
// deterministic function of (n, step).
Expected<ClauseSet> apply_step(const ClauseSet& n, const DerivationStep& s);

// Every resolvent of the pointed clause p with a clause of n \ {p}; used by
// the PurDel validator and the purification loop.
std::vector<Clause> all_resolvents_with(const ClauseSet& n, const ClauseLitRef& p);

}  // namespace wscan

#endif
