#ifndef WSCAN_TESTS_FUZZ_HPP
#define WSCAN_TESTS_FUZZ_HPP

#include <random>
#include <string>
#include <vector>

#include "wscan/parser.hpp"

namespace wscan::test {

// Random clause sets over at most two unary/binary predicate variables, two
// base predicates, constants a/b and variables u/v; no function symbols.
struct FuzzProblem {
  Signature signature;
  ClauseSet clauses;
  std::vector<std::pair<std::string, int>> xinfo;
};

inline Term random_fuzz_term(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Term::var("u");
    case 1: return Term::var("v");
    case 2: return Term::constant("a");
    default: return Term::constant("b");
  }
}

inline Literal random_fuzz_literal(std::mt19937& rng,
                                   const std::vector<std::pair<std::string, int>>& xinfo) {
  static const std::vector<std::pair<std::string, int>> binfo = {{"A", 1}, {"B", 2}};
  bool pos = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
  int pick = std::uniform_int_distribution<int>(0, 3)(rng);
  if (pick <= 1) {
    auto [name, a] = xinfo[static_cast<size_t>(pick) % xinfo.size()];
    std::vector<Term> args;
    for (int i = 0; i < a; ++i) args.push_back(random_fuzz_term(rng));
    return Literal::pred_var(pos, name, std::move(args));
  }
  auto [name, a] = binfo[static_cast<size_t>(pick - 2)];
  std::vector<Term> args;
  for (int i = 0; i < a; ++i) args.push_back(random_fuzz_term(rng));
  return Literal::base(pos, name, std::move(args));
}

inline Clause random_fuzz_clause(std::mt19937& rng, const FuzzProblem& p) {
  Clause c;
  int k = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int j = 0; j < k; ++j) c.literals.push_back(random_fuzz_literal(rng, p.xinfo));
  return c;
}

inline FuzzProblem random_problem(std::mt19937& rng) {
  FuzzProblem p;
  std::uniform_int_distribution<int> nvars(1, 2);
  std::uniform_int_distribution<int> arity(1, 2);
  std::uniform_int_distribution<int> nclauses(1, 6);

  int xs = nvars(rng);
  for (int i = 0; i < xs; ++i) {
    std::string name = "X" + std::to_string(i + 1);
    int a = arity(rng);
    (void)p.signature.declare_predicate_variable(name, a);
    p.xinfo.emplace_back(name, a);
  }
  (void)p.signature.declare_base_predicate("A", 1);
  (void)p.signature.declare_base_predicate("B", 2);
  (void)p.signature.declare_constant("a");
  (void)p.signature.declare_constant("b");

  int m = nclauses(rng);
  for (int i = 0; i < m; ++i) p.clauses.add(random_fuzz_clause(rng, p));
  return p;
}

}  // namespace wscan::test

#endif
