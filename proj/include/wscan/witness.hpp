#ifndef WSCAN_WITNESS_HPP
#define WSCAN_WITNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wscan/closure.hpp"
#include "wscan/derivation.hpp"
#include "wscan/formula.hpp"
#include "wscan/saturation.hpp"

namespace wscan {

// Simplification of witness bodies: unit flattening, top/bot absorption,
// double negation, dropping vacuous quantifiers, one-point constraint
// collapse under quantifier blocks, and orienting equalities variable-first.
Formula simplify_formula(const Formula& f);
PredicateExpression simplify(const PredicateExpression& e);
Witness simplify(const Witness& w);

// The witness transformation for one derivation step: identity for
// Res/Fac/ConstrElim/RedElim, top/bot for extended purity deletion, and the
// closure predicate (with the current witness substituted for the predicate
// variables) for purified clause deletion.
struct TransformOptions {
  int depth_limit = 32;
  bool apply_simplification = true;
};

Witness transform(const DerivationStep& s, const ClauseSet& before, const Witness& w,
                  Signature& sig, const TransformOptions& opt,
                  std::map<int, PredicateExpression>* annotation = nullptr,
                  int step_index = 0);

struct WitnessTrace {
  // per_step[i] is the witness for the i-th intermediate clause set;
  // per_step[m] is the parameter tuple (W1, ..., Wd), per_step[0] the final.
  std::vector<Witness> per_step;
  Witness final;
  // PurDel step position (1-based) -> the closure predicate substituted.
  std::map<int, PredicateExpression> annotation_used;
};

// Walks the derivation backwards per the witness transformation. The
// derivation must be X-eliminating.
Expected<WitnessTrace> extract_witness(const Derivation& d, Signature& sig,
                                       const TransformOptions& opt = {});

// The family N_{p,n} of p clauses with n positive X-literals over pairwise
// distinct constants, with its PurDel-only derivation; exercises the size
// recurrence of the witness construction.
Expected<std::pair<ClauseSet, Derivation>> generate_size_family(int p, int n, Signature& sig);

// If n has the shape N' + { ~X(u...) | C } with X only positive in N' and
// absent from C (or the dual), the Ackermann-style witness lambda u. C
// (resp. lambda u. ~C); nullopt otherwise.
std::optional<PredicateExpression> ackermann_witness(const ClauseSet& n, const std::string& x,
                                                     const Signature& sig);

// The derivation behind the Ackermann result: purify the Ackermann clause,
// then extended purity deletion for the remainder.
Expected<Derivation> ackermann_derivation(const ClauseSet& n, const std::string& x,
                                          const Signature& sig, const SaturationConfig& cfg);

}  // namespace wscan

#endif
