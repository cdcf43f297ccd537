#ifndef WSCAN_SUBST_HPP
#define WSCAN_SUBST_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wscan/clause.hpp"
#include "wscan/expected.hpp"
#include "wscan/term.hpp"

namespace wscan {

// Idempotent substitution of individual variables. Constructed in solved
// form: no bound variable occurs in any image, no x -> x bindings.
class Substitution {
 public:
  Substitution() = default;

  // Normalizes to solved form; fails on cyclic bindings.
  static Expected<Substitution> make(std::map<std::string, Term> bindings);

  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;
  Clause apply(const Clause& c) const;
  std::vector<Term> apply(const std::vector<Term>& ts) const;

  // Composition: E.apply(compose(tau)) == tau.apply(this->apply(E)).
  Substitution compose(const Substitution& then) const;

  bool empty() const { return bind_.empty(); }
  const std::map<std::string, Term>& bindings() const { return bind_; }

  bool operator==(const Substitution& o) const { return bind_ == o.bind_; }

 private:
  std::map<std::string, Term> bind_;
};

// Most general unifier of two equal-length term tuples (occurs check on).
// nullopt signals not-unifiable.
std::optional<Substitution> mgu(const std::vector<Term>& ts, const std::vector<Term>& ss);

// One-way matching: bindings b with pattern*b == target, instantiating only
// the pattern's variables. Returned as a raw apply-once map since pattern and
// target may share variable names (b need not be idempotent).
std::optional<std::map<std::string, Term>> match_terms(const std::vector<Term>& pattern,
                                                       const std::vector<Term>& target);

Term apply_once(const std::map<std::string, Term>& bindings, const Term& t);
Literal apply_once(const std::map<std::string, Term>& bindings, const Literal& l);

// Extends bindings so that pattern*b == target; on failure bindings are
// unchanged. Newly bound variable names are appended to trail so callers can
// undo a successful extension later (backtracking matchers).
bool match_extend(const Term& pattern, const Term& target,
                  std::map<std::string, Term>& bindings, std::vector<std::string>& trail);

// A variant of c sharing no variables with avoid; renamed variables get a
// reserved "_rN" suffix chosen deterministically.
Clause rename_apart(const Clause& c, const std::set<std::string>& avoid);

}  // namespace wscan

#endif
