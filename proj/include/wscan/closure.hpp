#ifndef WSCAN_CLOSURE_HPP
#define WSCAN_CLOSURE_HPP

#include <vector>

#include "wscan/calculus.hpp"
#include "wscan/formula.hpp"

namespace wscan {

// The resolution closure of the unit clause dual to the pointed clause's
// designated literal, over fresh constants. Clauses are kept in a simplified
// logically equivalent presentation (constraint elimination, condensation,
// redundancy deletion); the raw resolvents are retained for audit.
struct UnitClosure {
  PointedClause pointed;
  std::vector<std::string> fresh_constants;
  std::vector<Clause> clauses;      // canonical presentation, seed first
  std::vector<Clause> raw_clauses;  // every resolvent as derived, incl. seed
  bool complete = false;            // false when cut off at the depth limit
};

// Saturates {L(c)^dual} under resolution with the pointed clause upon its
// designated literal; depth_limit bounds the resolution rounds.
UnitClosure unit_closure(const PointedClause& p, Signature& sig, int depth_limit);

// The predicate expression of the closure: for a negative designated literal
// the conjunction over closure clauses of their universal closures; for a
// positive one the disjunction of existentially quantified negations. Fresh
// lambda parameters replace the closure constants. Incomplete closures carry
// a truncation marker.
PredicateExpression res_predicate(const UnitClosure& u);

// Constant-for-term replacement (used to abstract the closure constants).
Term replace_constants(const Term& t, const std::map<std::string, Term>& map);
Clause replace_constants(const Clause& c, const std::map<std::string, Term>& map);

}  // namespace wscan

#endif
