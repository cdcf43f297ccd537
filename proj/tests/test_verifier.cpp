#include <doctest.h>

#include "helpers.hpp"
#include "wscan/saturation.hpp"
#include "wscan/verifier.hpp"

using namespace wscan;
using namespace wscan::test;

namespace {

Witness eq_a_witness() {
  PredicateExpression e;
  e.params = {"u"};
  e.body = f_eq(V("u"), K("a"));
  Witness w;
  w.components = {e};
  return w;
}

Witness const_witness(bool top) {
  PredicateExpression e;
  e.params = {"u"};
  e.body = top ? f_top() : f_bot();
  Witness w;
  w.components = {e};
  return w;
}

}  // namespace

TEST_CASE("evaluation follows the structure") {
  FiniteStructure m;
  m.domain_size = 1;
  m.constants = {{"a", 0}, {"c", 0}};
  Env env;
  // a != c is false when both constants denote the same element.
  auto r = eval_formula(f_not(f_eq(K("a"), K("c"))), m, env);
  REQUIRE(r.ok());
  CHECK_FALSE(*r);

  FiniteStructure m2;
  m2.domain_size = 2;
  m2.constants = {{"a", 0}, {"c", 1}};
  auto r2 = eval_formula(
      f_exists2("X", 1,
                f_and({f_atom(AtomKind::PredVar, "X", {K("a")}),
                       f_not(f_atom(AtomKind::PredVar, "X", {K("c")}))})),
      m2, env);
  REQUIRE(r2.ok());
  CHECK(*r2);

  // Universal closure of B(a,v) with a total relation.
  ProblemFile p = prob("vars: X/1\nclause: B(a,v)\n");
  FiniteStructure m3;
  m3.domain_size = 2;
  m3.constants = {{"a", 0}};
  m3.predicates = {{"B", {1, 1, 1, 1}}};
  auto r3 = eval_clause_set(p.clauses, m3, env);
  REQUIRE(r3.ok());
  CHECK(*r3);
  m3.predicates = {{"B", {1, 0, 1, 1}}};
  auto r4 = eval_clause_set(p.clauses, m3, env);
  REQUIRE(r4.ok());
  CHECK_FALSE(*r4);
}

TEST_CASE("second-order existential agrees with the explicit disjunction") {
  ProblemFile p = prob("vars: X/2\nclause: X(u,v) | B(u)\nclause: -X(u,u) | -B(v)\n");
  for (int domain = 1; domain <= 2; ++domain) {
    SymbolTable syms = collect_symbols(p.clauses, p.signature.predicate_variables(), nullptr);
    StructureEnumerator en(syms, domain);
    FiniteStructure m;
    while (en.next(m)) {
      if (m.domain_size != domain) continue;
      Env env;
      // Route 1: the evaluator's own second-order quantifier.
      std::vector<Formula> cl;
      for (const auto& [id, c] : p.clauses.clauses()) {
        (void)id;
        Formula body = clause_formula(c);
        auto vars = c.variables();
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = f_forall(*it, body);
        cl.push_back(body);
      }
      auto via_eval = eval_formula(f_exists2("X", 2, f_and(cl)), m, env);
      REQUIRE(via_eval.ok());
      // Route 2: explicit enumeration of the 2^(n^2) relations.
      bool via_tables = false;
      std::uint64_t cells = ipow(m.domain_size, 2);
      for (std::uint64_t bits = 0; bits < (1ull << cells); ++bits) {
        Env e2;
        std::vector<char> table(cells, 0);
        for (std::uint64_t i = 0; i < cells; ++i) table[i] = (bits >> i) & 1 ? 1 : 0;
        e2.preds["X"] = table;
        auto r = eval_clause_set(p.clauses, m, e2);
        REQUIRE(r.ok());
        if (*r) {
          via_tables = true;
          break;
        }
      }
      CHECK(*via_eval == via_tables);
    }
  }
}

TEST_CASE("check_wsoqe on the worked example") {
  ProblemFile p = load_problem("example1.p");
  const PredVars& xs = p.signature.predicate_variables();

  SUBCASE("the published witness verifies up to domain size 3") {
    auto rep = check_wsoqe(p.clauses, xs, eq_a_witness(), 3);
    REQUIRE(rep.ok());
    CHECK(rep->verified);
    CHECK(rep->up_to == 3);
    CHECK(rep->structures_checked > 0);
  }
  SUBCASE("lambda u. bot is refuted at domain size <= 2") {
    auto rep = check_wsoqe(p.clauses, xs, const_witness(false), 2);
    REQUIRE(rep.ok());
    CHECK_FALSE(rep->verified);
    REQUIRE(rep->counterexample.has_value());
    CHECK(rep->up_to <= 2);
  }
  SUBCASE("lambda u. top is refuted as well") {
    auto rep = check_wsoqe(p.clauses, xs, const_witness(true), 2);
    REQUIRE(rep.ok());
    CHECK_FALSE(rep->verified);
  }
  SUBCASE("counterexamples replay") {
    auto rep = check_wsoqe(p.clauses, xs, const_witness(false), 2);
    REQUIRE(rep.ok());
    REQUIRE(rep->counterexample.has_value());
    const FiniteStructure& m = *rep->counterexample;
    auto substituted = clause_set_substituted(p.clauses, xs, const_witness(false));
    REQUIRE(substituted.ok());
    Env env;
    auto rhs = eval_formula(*substituted, m, env);
    REQUIRE(rhs.ok());
    bool lhs = false;
    for (std::uint64_t bits = 0; bits < (1ull << m.domain_size); ++bits) {
      Env e2;
      std::vector<char> table(static_cast<size_t>(m.domain_size), 0);
      for (int i = 0; i < m.domain_size; ++i) table[static_cast<size_t>(i)] = (bits >> i) & 1 ? 1 : 0;
      e2.preds["X"] = table;
      auto r = eval_clause_set(p.clauses, m, e2);
      REQUIRE(r.ok());
      lhs = lhs || *r;
    }
    CHECK(lhs != *rhs);
  }
  SUBCASE("monotone in the bound") {
    auto rep3 = check_wsoqe(p.clauses, xs, eq_a_witness(), 3);
    auto rep2 = check_wsoqe(p.clauses, xs, eq_a_witness(), 2);
    auto rep1 = check_wsoqe(p.clauses, xs, eq_a_witness(), 1);
    REQUIRE(rep3.ok());
    REQUIRE(rep2.ok());
    REQUIRE(rep1.ok());
    CHECK(rep3->verified);
    CHECK(rep2->verified);
    CHECK(rep1->verified);
  }
}

TEST_CASE("check_wsoqe without occurrences of the variable is the identity") {
  ProblemFile p = prob("vars: X/1\nclause: B(a,v)\n");
  Witness w = const_witness(true);
  auto rep = check_wsoqe(p.clauses, p.signature.predicate_variables(), w, 3);
  REQUIRE(rep.ok());
  CHECK(rep->verified);
}

TEST_CASE("truncated witnesses are rejected") {
  ProblemFile p = load_problem("example1.p");
  Witness w;
  PredicateExpression e;
  e.params = {"u"};
  e.body = f_and({f_eq(V("u"), K("a")), f_truncated()});
  e.truncated = true;
  e.first_order = false;
  w.components = {e};
  auto rep = check_wsoqe(p.clauses, p.signature.predicate_variables(), w, 2);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("check_step validates the worked resolution step") {
  ProblemFile p = load_problem("example1.p");
  const PredVars& xs = p.signature.predicate_variables();
  ClauseSet after = p.clauses;
  Clause res;
  res.literals = {Literal::equality(false, K("a"), K("c"))};
  after.add(std::move(res));
  CheckReport rep = check_step(p.clauses, after, xs, 2);
  CHECK(rep.verified);
  CHECK(rep.up_to == 2);
}

TEST_CASE("check_step existential equivalence for PurDel and a negative control") {
  ProblemFile p = prob("vars: X/1\nclause: X(a)\n");
  ClauseSet empty;
  CheckReport rep = check_step(p.clauses, empty, p.signature.predicate_variables(), 2);
  CHECK(rep.verified);

  ProblemFile q = prob("vars: X/1\nclause: B(a)\n");
  CheckReport bad = check_step(q.clauses, empty, q.signature.predicate_variables(), 2);
  CHECK_FALSE(bad.verified);
  REQUIRE(bad.counterexample.has_value());
}

TEST_CASE("feq_check distinguishes the verdicts") {
  SUBCASE("empty set is trivially solved") {
    ProblemFile p = prob("vars: X/1\nconsts: a\n");
    Derivation d(p.clauses);
    auto rep = feq_check(p.clauses, p.signature.predicate_variables(), d, eq_a_witness(), 2);
    REQUIRE(rep.ok());
    CHECK(rep->verdict == FeqVerdict::FeqSolution);
  }
  SUBCASE("the modified introduction formula is solved by the sufficient condition") {
    ProblemFile p = load_problem("phi_prime.p");
    SaturationConfig cfg;
    SaturateResult sat = saturate(p.clauses, p.signature, cfg);
    REQUIRE(sat.status == SaturateResult::Status::Eliminated);
    CHECK(sat.derivation.conclusion().empty());
    CHECK(sat.derivation.is_one_sided());
    auto rep = feq_check(p.clauses, p.signature.predicate_variables(), sat.derivation,
                         eq_a_witness(), 3);
    REQUIRE(rep.ok());
    CHECK(rep->verdict == FeqVerdict::FeqBySufficientCondition);
  }
  SUBCASE("the main example has no FEQ solution") {
    ProblemFile p = load_problem("example1.p");
    Derivation d(p.clauses);
    auto rep = feq_check(p.clauses, p.signature.predicate_variables(), d, eq_a_witness(), 2);
    REQUIRE(rep.ok());
    CHECK(rep->verdict == FeqVerdict::Countermodel);
    REQUIRE(rep->countermodel.has_value());
  }
}
