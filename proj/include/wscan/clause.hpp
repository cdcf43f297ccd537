#ifndef WSCAN_CLAUSE_HPP
#define WSCAN_CLAUSE_HPP

#include <set>
#include <string>
#include <vector>

#include "wscan/term.hpp"

namespace wscan {

enum class AtomKind { Base, PredVar, Equality };

// A literal over base predicates, predicate variables and equality.
// Negative equality literals are the calculus' constraint literals.
struct Literal {
  bool positive = true;
  AtomKind atom = AtomKind::Base;
  std::string pred;        // Base / PredVar only
  std::vector<Term> args;  // Equality: exactly {lhs, rhs}

  static Literal base(bool pos, std::string name, std::vector<Term> a) {
    return {pos, AtomKind::Base, std::move(name), std::move(a)};
  }
  static Literal pred_var(bool pos, std::string name, std::vector<Term> a) {
    return {pos, AtomKind::PredVar, std::move(name), std::move(a)};
  }
  static Literal equality(bool pos, Term lhs, Term rhs) {
    return {pos, AtomKind::Equality, "", {std::move(lhs), std::move(rhs)}};
  }

  bool is_pred_var() const { return atom == AtomKind::PredVar; }
  bool is_equality() const { return atom == AtomKind::Equality; }
  bool is_constraint() const { return atom == AtomKind::Equality && !positive; }

  Literal dual() const {
    Literal d = *this;
    d.positive = !d.positive;
    return d;
  }

  // Same atom syntactically; equality compared up to symmetry.
  bool same_atom(const Literal& o) const;

  bool operator==(const Literal& o) const {
    return positive == o.positive && atom == o.atom && pred == o.pred && args == o.args;
  }
  bool operator!=(const Literal& o) const { return !(*this == o); }
};

enum class OriginKind { Input, Resolvent, Factor, ConstraintElim, Condensation };

struct Origin {
  OriginKind kind = OriginKind::Input;
  std::vector<int> parents;           // clause ids
  std::vector<int> designated;        // Res: literal indices into the parents
};

// Literals form a multiset with stable order, so literal indices stay valid.
struct Clause {
  std::vector<Literal> literals;
  int id = 0;
  Origin origin;

  bool empty() const { return literals.empty(); }
  size_t size() const { return literals.size(); }

  std::set<std::string> variables() const;
  std::set<std::string> constants() const;
  bool contains_pred_var(const std::string& name) const;
  // +1 bit / -1 bit for occurrences of the given predicate variable.
  void pred_var_polarities(const std::string& name, bool& pos, bool& neg) const;
  std::vector<int> pred_var_literal_indices() const;

  bool same_literals(const Clause& o) const { return literals == o.literals; }
};

// A clause with one designated literal (0-based index; rendered 1-based in
// the paper's dot notation).
struct PointedClause {
  Clause clause;
  int designated = 0;

  const Literal& literal() const { return clause.literals[static_cast<size_t>(designated)]; }
};

// Reference to a designated literal of a clause held in a clause set.
struct ClauseLitRef {
  int clause_id = 0;
  int lit_index = 0;
  bool operator==(const ClauseLitRef& o) const {
    return clause_id == o.clause_id && lit_index == o.lit_index;
  }
};

std::string literal_to_string(const Literal& l);
std::string clause_to_string(const Clause& c);

// True iff the pointed clause's predicate variable occurs with a single
// polarity in the whole clause.
bool one_sided(const PointedClause& p);

// Clauses equal up to a bijective renaming of variables.
bool variant_clauses(const Clause& a, const Clause& b);

}  // namespace wscan

#endif
