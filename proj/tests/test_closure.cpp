#include <doctest.h>

#include "helpers.hpp"
#include "wscan/closure.hpp"
#include "wscan/render.hpp"
#include "wscan/verifier.hpp"
#include "wscan/witness.hpp"

using namespace wscan;
using namespace wscan::test;

namespace {

PointedClause pointed(std::vector<Literal> lits, int idx) {
  Clause c;
  c.literals = std::move(lits);
  c.id = 1;
  return PointedClause{std::move(c), idx};
}

}  // namespace

TEST_CASE("one-sidedness of pointed clauses") {
  CHECK(one_sided(pointed({Literal::pred_var(true, "X", {K("a")})}, 0)));
  CHECK_FALSE(one_sided(pointed({Literal::base(true, "B", {V("u"), V("v")}),
                                 Literal::pred_var(false, "X", {V("u")}),
                                 Literal::pred_var(true, "X", {V("v")})},
                                1)));
  CHECK_FALSE(one_sided(pointed({Literal::pred_var(false, "X", {V("u"), V("v")}),
                                 Literal::pred_var(true, "X", {V("v"), V("u")})},
                                0)));
  CHECK(one_sided(pointed({Literal::pred_var(false, "X", {K("a")}),
                           Literal::pred_var(false, "X", {K("b")})},
                          0)));
}

TEST_CASE("unit closure of a positive ground unit") {
  Signature sig;
  REQUIRE(sig.declare_predicate_variable("X", 1).ok());
  REQUIRE(sig.declare_constant("a").ok());
  UnitClosure u = unit_closure(pointed({Literal::pred_var(true, "X", {K("a")})}, 0), sig, 32);
  CHECK(u.complete);
  REQUIRE(u.clauses.size() == 2);
  const std::string c = u.fresh_constants[0];
  CHECK(u.clauses[0].literals == std::vector<Literal>{Literal::pred_var(false, "X", {K(c)})});
  CHECK(u.clauses[1].literals ==
        std::vector<Literal>{Literal::equality(false, K("a"), K(c))});
  // One-sided pointed clauses close with exactly the seed and one resolvent.
  CHECK(u.raw_clauses.size() == 2);
}

TEST_CASE("unit closure of a negative pointed clause with a second occurrence") {
  Signature sig;
  REQUIRE(sig.declare_predicate_variable("X", 1).ok());
  REQUIRE(sig.declare_constant("a").ok());
  REQUIRE(sig.declare_constant("b").ok());
  UnitClosure u = unit_closure(pointed({Literal::pred_var(false, "X", {K("a")}),
                                        Literal::pred_var(false, "X", {K("b")})},
                                       0),
                               sig, 32);
  CHECK(u.complete);
  REQUIRE(u.clauses.size() == 2);
  const std::string c = u.fresh_constants[0];
  CHECK(u.clauses[0].literals == std::vector<Literal>{Literal::pred_var(true, "X", {K(c)})});
  CHECK(u.clauses[1].literals ==
        std::vector<Literal>{Literal::equality(false, K("a"), K(c)),
                             Literal::pred_var(false, "X", {K("b")})});
}

TEST_CASE("the swap clause closes to two unit clauses") {
  Signature sig;
  REQUIRE(sig.declare_predicate_variable("X", 2).ok());
  UnitClosure u = unit_closure(pointed({Literal::pred_var(false, "X", {V("u"), V("v")}),
                                        Literal::pred_var(true, "X", {V("v"), V("u")})},
                                       0),
                               sig, 32);
  CHECK(u.complete);
  REQUIRE(u.clauses.size() == 2);
  const std::string c = u.fresh_constants[0];
  const std::string d = u.fresh_constants[1];
  CHECK(u.clauses[0].literals ==
        std::vector<Literal>{Literal::pred_var(true, "X", {K(c), K(d)})});
  CHECK(u.clauses[1].literals ==
        std::vector<Literal>{Literal::pred_var(true, "X", {K(d), K(c)})});
}

TEST_CASE("the two-sided chain clause does not close") {
  Signature sig;
  REQUIRE(sig.declare_predicate_variable("X", 1).ok());
  PointedClause p = pointed({Literal::base(true, "B", {V("u"), V("v")}),
                             Literal::pred_var(false, "X", {V("u")}),
                             Literal::pred_var(true, "X", {V("v")})},
                            1);
  UnitClosure u = unit_closure(p, sig, 8);
  CHECK_FALSE(u.complete);
  // Prefix: X(c); B(c,v) | X(v); B(c,v) | B(v,v') | X(v'); ...
  REQUIRE(u.clauses.size() >= 3);
  const std::string c = u.fresh_constants[0];
  CHECK(u.clauses[0].literals == std::vector<Literal>{Literal::pred_var(true, "X", {K(c)})});
  for (size_t k = 1; k < u.clauses.size(); ++k) {
    const Clause& ck = u.clauses[k];
    REQUIRE(ck.literals.size() == k + 1);
    // k chained B-literals plus one positive X-literal, anchored at c.
    size_t b_count = 0, x_count = 0, c_anchored = 0;
    for (const Literal& l : ck.literals) {
      if (l.atom == AtomKind::Base && l.pred == "B") {
        ++b_count;
        if (l.args[0] == K(c)) ++c_anchored;
      }
      if (l.is_pred_var()) {
        CHECK(l.positive);
        ++x_count;
      }
    }
    CHECK(b_count == k);
    CHECK(x_count == 1);
    CHECK(c_anchored == 1);
  }
  // Deeper limits extend the prefix deterministically.
  Signature sig2;
  REQUIRE(sig2.declare_predicate_variable("X", 1).ok());
  UnitClosure u2 = unit_closure(p, sig2, 12);
  CHECK_FALSE(u2.complete);
  CHECK(u2.clauses.size() == u.clauses.size() + 4);
}

TEST_CASE("res predicate of the worked closures") {
  Signature sig;
  REQUIRE(sig.declare_predicate_variable("X", 1).ok());
  REQUIRE(sig.declare_constant("a").ok());
  REQUIRE(sig.declare_constant("b").ok());

  SUBCASE("positive ground unit gives X(u) | u = a") {
    UnitClosure u =
        unit_closure(pointed({Literal::pred_var(true, "X", {K("a")})}, 0), sig, 32);
    PredicateExpression e = res_predicate(u);
    REQUIRE(e.params == std::vector<std::string>{"u"});
    CHECK(e.first_order);
    Formula want = f_or({f_atom(AtomKind::PredVar, "X", {V("u")}), f_eq(K("a"), V("u"))});
    CHECK(e.body == want);
    CHECK(formula_to_text(simplify_formula(e.body)) == "X(u) ∨ u = a");
  }
  SUBCASE("negative two-occurrence clause gives X(u) & (u != a | -X(b))") {
    UnitClosure u = unit_closure(pointed({Literal::pred_var(false, "X", {K("a")}),
                                          Literal::pred_var(false, "X", {K("b")})},
                                         0),
                                 sig, 32);
    PredicateExpression e = res_predicate(u);
    Formula want = f_and({f_atom(AtomKind::PredVar, "X", {V("u")}),
                          f_or({f_not(f_eq(K("a"), V("u"))),
                                f_not(f_atom(AtomKind::PredVar, "X", {K("b")}))})});
    CHECK(e.body == want);
  }
  SUBCASE("incomplete closures are marked truncated") {
    UnitClosure u = unit_closure(pointed({Literal::base(true, "B", {V("u"), V("v")}),
                                          Literal::pred_var(false, "X", {V("u")}),
                                          Literal::pred_var(true, "X", {V("v")})},
                                         1),
                                 sig, 4);
    PredicateExpression e = res_predicate(u);
    CHECK(e.truncated);
    CHECK_FALSE(e.first_order);
    CHECK(formula_contains_truncation(e.body));
  }
}

TEST_CASE("res predicate satisfies P[X <- res_p] in small structures") {
  // Lemma-style check: substituting the closure predicate into the pointed
  // clause is valid, for the one-sided corpus clauses and the swap clause.
  std::vector<PointedClause> corpus = {
      pointed({Literal::pred_var(true, "X", {K("a")})}, 0),
      pointed({Literal::pred_var(false, "X", {K("a")}),
               Literal::pred_var(false, "X", {K("b")})},
              0),
      pointed({Literal::pred_var(false, "X", {V("u")}), Literal::base(true, "B", {V("u")})},
              0),
      pointed({Literal::pred_var(true, "X", {V("u")}), Literal::base(false, "B", {V("u")})},
              0),
      pointed({Literal::pred_var(false, "X", {V("u"), V("v")}),
               Literal::pred_var(true, "X", {V("v"), V("u")})},
              0),
  };
  for (size_t ci = 0; ci < corpus.size(); ++ci) {
    CAPTURE(ci);
    const PointedClause& p = corpus[ci];
    Signature sig;
    int arity = static_cast<int>(p.literal().args.size());
    REQUIRE(sig.declare_predicate_variable("X", arity).ok());
    UnitClosure u = unit_closure(p, sig, 16);
    REQUIRE(u.complete);
    PredicateExpression barep = res_predicate(u);

    std::map<std::string, PredicateExpression> map{{"X", barep}};
    Formula sub = substitute_pred_vars(clause_formula(p.clause), map);
    std::set<std::string> vars = p.clause.variables();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) sub = f_forall(*it, sub);

    std::set<std::string> consts;
    std::map<std::string, int> funcs, preds, pvars;
    collect_formula_symbols(sub, consts, funcs, preds, pvars);
    SymbolTable syms;
    syms.constants.assign(consts.begin(), consts.end());
    for (auto& [n, a] : preds) syms.predicates.emplace_back(n, a);
    for (auto& [n, a] : pvars) syms.predicates.emplace_back(n, a);  // X ranges freely
    StructureEnumerator en(syms, 3);
    FiniteStructure m;
    Env env;
    while (en.next(m)) {
      // Treat the free predicate variable occurrences via the structure's
      // own tables: rename PredVar atoms to base ones on the fly.
      auto r = eval_formula(sub, m, env);
      REQUIRE_MESSAGE(r.ok(), r.error());
      CHECK(*r);
    }
  }
}

TEST_CASE("closure duality: dualizing the pointed clause dualizes the closure") {
  std::vector<PointedClause> corpus = {
      pointed({Literal::pred_var(true, "X", {K("a")})}, 0),
      pointed({Literal::pred_var(false, "X", {V("u")}), Literal::base(true, "B", {V("u")})},
              0),
      pointed({Literal::pred_var(false, "X", {V("u"), V("v")}),
               Literal::pred_var(true, "X", {V("v"), V("u")})},
              0),
  };
  for (size_t ci = 0; ci < corpus.size(); ++ci) {
    CAPTURE(ci);
    const PointedClause& p = corpus[ci];
    PointedClause dualized = p;
    for (Literal& l : dualized.clause.literals)
      if (l.is_pred_var()) l = l.dual();

    Signature sig1, sig2;
    int arity = static_cast<int>(p.literal().args.size());
    REQUIRE(sig1.declare_predicate_variable("X", arity).ok());
    REQUIRE(sig2.declare_predicate_variable("X", arity).ok());
    UnitClosure u1 = unit_closure(p, sig1, 16);
    UnitClosure u2 = unit_closure(dualized, sig2, 16);
    REQUIRE(u1.complete);
    REQUIRE(u2.complete);
    REQUIRE(u1.clauses.size() == u2.clauses.size());
    for (size_t k = 0; k < u1.clauses.size(); ++k) {
      Clause flipped = u1.clauses[k];
      for (Literal& l : flipped.literals)
        if (l.is_pred_var()) l = l.dual();
      // Fresh constants differ between the two closures; compare modulo
      // the constant renaming.
      std::map<std::string, Term> ren;
      for (size_t j = 0; j < u1.fresh_constants.size(); ++j)
        ren[u1.fresh_constants[j]] = K(u2.fresh_constants[j]);
      flipped = replace_constants(flipped, ren);
      CHECK(variant_clauses(flipped, u2.clauses[k]));
    }
  }
}
