#ifndef WSCAN_VERIFIER_HPP
#define WSCAN_VERIFIER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wscan/clause_set.hpp"
#include "wscan/derivation.hpp"
#include "wscan/expected.hpp"
#include "wscan/formula.hpp"
#include "wscan/structure.hpp"

namespace wscan {

// Assignment of free individual variables and free predicate symbols that
// are not interpreted by the structure (predicate variables, witness
// parameters treated as tables).
struct Env {
  std::map<std::string, int> vars;
  std::map<std::string, std::vector<char>> preds;
};

// Tarskian evaluation. Second-order quantifiers enumerate all relations of
// the right arity. Fails on uninterpreted symbols or truncation markers.
Expected<bool> eval_formula(const Formula& f, const FiniteStructure& m, const Env& env);
Expected<int> eval_term(const Term& t, const FiniteStructure& m, const Env& env);
// Universal closure of each clause over its free individual variables.
Expected<bool> eval_clause_set(const ClauseSet& n, const FiniteStructure& m, const Env& env);

struct CheckReport {
  bool verified = false;
  int up_to = 0;  // verified for all domain sizes <= up_to
  std::optional<FiniteStructure> counterexample;
  std::string detail;
  std::uint64_t structures_checked = 0;
  std::uint64_t cap = 0;
  bool capped = false;  // enumeration cut off at the structure cap
  double elapsed_seconds = 0.0;
};

using PredVars = std::vector<std::pair<std::string, int>>;

constexpr std::uint64_t kDefaultStructureCap = 10'000'000;

// The symbols of a clause set and witness, for structure enumeration.
// Predicate variables from xs are excluded; everything else (including
// witness parameters) is part of the enumerated signature.
SymbolTable collect_symbols(const ClauseSet& n, const PredVars& xs, const Witness* w);

// Checks exists(Xs) N  <=>  N[Xs <- witness] over every structure of domain
// size <= k. The witness must be first-order with instantiated parameters.
Expected<CheckReport> check_wsoqe(const ClauseSet& n, const PredVars& xs, const Witness& w,
                                  int k, std::uint64_t cap = kDefaultStructureCap);

// Checks |= N -> N' with the predicate variables read as ordinary predicates
// and exists(Xs) N <=> exists(Xs) N', over domain sizes <= k.
CheckReport check_step(const ClauseSet& n, const ClauseSet& n_after, const PredVars& xs,
                       int k, std::uint64_t cap = kDefaultStructureCap);

// check_step for every consecutive pair of a derivation's intermediate
// clause sets, sharing the per-structure clause truth tables across steps.
struct DerivationCheck {
  bool verified = false;
  size_t failed_step = 0;  // 1-based position when verified == false
  CheckReport report;
};
DerivationCheck check_derivation(const Derivation& d, const PredVars& xs, int k,
                                 std::uint64_t cap = kDefaultStructureCap);

enum class FeqVerdict { FeqSolution, FeqBySufficientCondition, Countermodel, UnknownUpTo };

struct FeqReport {
  FeqVerdict verdict = FeqVerdict::UnknownUpTo;
  int up_to = 0;
  std::optional<FiniteStructure> countermodel;
  std::string detail;
};

// FEQ check: the sufficient condition applies when the derivation concludes
// with the empty clause set and is one-sided; otherwise a bounded
// countermodel search over N[Xs <- witness]. Bounded search cannot certify
// validity, so the fallback verdict stays "unknown up to k".
Expected<FeqReport> feq_check(const ClauseSet& n, const PredVars& xs, const Derivation& d,
                              const Witness& w, int k);

// Substitute the witness into every clause and take the universal closures.
Expected<Formula> clause_set_substituted(const ClauseSet& n, const PredVars& xs,
                                         const Witness& w);

// Replace every witness-parameter atom W<i>(t) by top or bot.
Witness instantiate_witness_params(const Witness& w, bool top);
PredicateExpression instantiate_params(const PredicateExpression& e, bool top);

// Oracle equivalence of two predicate expressions over all structures of
// domain size <= k (universally over their joint signature).
Expected<bool> predicate_expressions_equivalent(const PredicateExpression& a,
                                                const PredicateExpression& b, int k,
                                                std::uint64_t cap = kDefaultStructureCap);

}  // namespace wscan

#endif
