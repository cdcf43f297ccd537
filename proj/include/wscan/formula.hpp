#ifndef WSCAN_FORMULA_HPP
#define WSCAN_FORMULA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wscan/clause.hpp"
#include "wscan/expected.hpp"
#include "wscan/subst.hpp"

namespace wscan {

enum class FormulaKind {
  Atom,       // base predicate, predicate variable or equality
  Top,
  Bot,
  Not,        // 1 child
  And,        // n-ary
  Or,         // n-ary
  Implies,    // 2 children
  Iff,        // 2 children
  Forall,     // individual quantifier, name = variable, 1 child
  Exists,
  Forall2,    // predicate quantifier, name + arity, 1 child
  Exists2,
  Truncated,  // marker for a cut-off infinite conjunction/disjunction
};

struct Formula {
  FormulaKind kind = FormulaKind::Top;
  AtomKind atom = AtomKind::Base;  // Atom only
  std::string name;                // Atom predicate / quantified variable
  int arity = 0;                   // Forall2 / Exists2
  std::vector<Term> args;          // Atom (Equality: {lhs, rhs})
  std::vector<Formula> children;

  bool operator==(const Formula& o) const {
    return kind == o.kind && atom == o.atom && name == o.name && arity == o.arity &&
           args == o.args && children == o.children;
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }
};

Formula f_top();
Formula f_bot();
Formula f_truncated();
Formula f_atom(AtomKind k, std::string name, std::vector<Term> args);
Formula f_eq(Term lhs, Term rhs);
Formula f_not(Formula f);
Formula f_and(std::vector<Formula> fs);
Formula f_or(std::vector<Formula> fs);
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_forall(std::string var, Formula body);
Formula f_exists(std::string var, Formula body);
Formula f_forall2(std::string pred_var, int arity, Formula body);
Formula f_exists2(std::string pred_var, int arity, Formula body);

// A literal as a formula: negative literals become Not(atom).
Formula literal_formula(const Literal& l);
// Disjunction of the clause's literals; the empty clause is Bot.
Formula clause_formula(const Clause& c);
// Conjunction of dualized literals, i.e. the negation of the clause with
// double negations already eliminated; the empty clause yields Top.
Formula negated_clause_formula(const Clause& c);

void collect_free_vars(const Formula& f, std::set<std::string>& out,
                       std::set<std::string> bound = {});
bool formula_contains_pred_var(const Formula& f, const std::string& name);
bool formula_contains_truncation(const Formula& f);
void collect_formula_symbols(const Formula& f, std::set<std::string>& consts,
                             std::map<std::string, int>& funcs,
                             std::map<std::string, int>& preds,
                             std::map<std::string, int>& pred_vars);

// Capture-avoiding first-order substitution.
Formula substitute(const Formula& f, const Substitution& s);

// A lambda-abstracted formula; free individual variables of body are among
// params. truncated marks a closure that was cut off at the depth limit.
struct PredicateExpression {
  std::vector<std::string> params;
  Formula body;
  bool first_order = true;
  bool truncated = false;

  bool operator==(const PredicateExpression& o) const {
    return params == o.params && body == o.body && first_order == o.first_order &&
           truncated == o.truncated;
  }
};

// body[params <- args], capture-avoiding.
Formula beta_apply(const PredicateExpression& e, const std::vector<Term>& args);

// Second-order substitution E[X <- lambda u.phi]: every atom X(t) becomes
// phi(t). Arity mismatches are programming errors and are checked.
Formula substitute_pred_vars(const Formula& f,
                             const std::map<std::string, PredicateExpression>& map);
Formula clause_formula_substituted(const Clause& c,
                                   const std::map<std::string, PredicateExpression>& map);

// One component per predicate variable of the elimination tuple.
struct Witness {
  std::vector<PredicateExpression> components;

  bool first_order() const;
  bool truncated() const;
};

// The size measure: constants/variables/top/bot count 1, applications and
// atoms 1 + size of arguments, negation and quantifiers add 1, n-ary
// connectives sum their operands, lambda adds nothing, tuples sum.
// nullopt encodes an infinite size (truncation marker present).
using Size = std::optional<std::uint64_t>;
Size size_of(const Term& t);
Size size_of(const std::vector<Term>& ts);
Size size_of(const Literal& l);
Size size_of(const Clause& c);
Size size_of(const Formula& f);
Size size_of(const PredicateExpression& e);
Size size_of(const Witness& w);

}  // namespace wscan

#endif
