#include <doctest.h>

#include "helpers.hpp"
#include "wscan/render.hpp"
#include "wscan/verifier.hpp"
#include "wscan/witness.hpp"

using namespace wscan;
using namespace wscan::test;

namespace {

PredicateExpression pe(std::vector<std::string> params, Formula body) {
  PredicateExpression e;
  e.params = std::move(params);
  e.body = std::move(body);
  return e;
}

Derivation example1_derivation(const ProblemFile& p) {
  Derivation d(p.clauses);
  REQUIRE(d.push(make_res_step({2, 0}, {4, 0}, 5)).ok());
  REQUIRE(d.push(make_pur_del_step({2, 0})).ok());
  REQUIRE(d.push(make_ext_pur_del_step("X", '-', {3, 4})).ok());
  return d;
}

}  // namespace

TEST_CASE("simplification applies the listed equivalences") {
  CHECK(simplify_formula(f_or({f_bot(), f_eq(V("u"), K("a"))})) == f_eq(V("u"), K("a")));
  CHECK(simplify_formula(f_and({f_top(), f_atom(AtomKind::Base, "C", {V("v")})})) ==
        f_atom(AtomKind::Base, "C", {V("v")}));
  CHECK(simplify_formula(f_or({f_top(), f_bot()})) == f_top());
  CHECK(simplify_formula(f_and({f_bot(), f_top()})) == f_bot());
  CHECK(simplify_formula(f_not(f_not(f_atom(AtomKind::Base, "B", {V("u")})))) ==
        f_atom(AtomKind::Base, "B", {V("u")}));
  CHECK(simplify_formula(f_not(f_top())) == f_bot());
  CHECK(simplify_formula(f_not(f_bot())) == f_top());
  CHECK(simplify_formula(f_and({f_atom(AtomKind::Base, "B", {V("u")})})) ==
        f_atom(AtomKind::Base, "B", {V("u")}));
  // Vacuous quantifier.
  CHECK(simplify_formula(f_forall("v", f_atom(AtomKind::Base, "B", {V("u")}))) ==
        f_atom(AtomKind::Base, "B", {V("u")}));
  // Equality orientation puts the variable first.
  CHECK(simplify_formula(f_eq(K("a"), V("u"))) == f_eq(V("u"), K("a")));
}

TEST_CASE("one-point collapse under quantifier blocks") {
  // forall u (u != t | phi) -> phi[u <- t]
  Formula f = f_forall("u", f_or({f_not(f_eq(V("u"), K("a"))),
                                  f_atom(AtomKind::Base, "B", {V("u")})}));
  CHECK(simplify_formula(f) == f_atom(AtomKind::Base, "B", {K("a")}));
  // Across a block: forall v forall u (v != u | C(u,v)).
  Formula g = f_forall(
      "v", f_forall("u", f_or({f_not(f_eq(V("v"), V("u"))),
                               f_atom(AtomKind::Base, "C", {V("u"), V("v")})})));
  Formula gs = simplify_formula(g);
  CHECK(gs == f_forall("u", f_atom(AtomKind::Base, "C", {V("u"), V("u")})));
  // exists u (u = t & phi) -> phi[u <- t]
  Formula h = f_exists("u", f_and({f_eq(V("u"), K("a")),
                                   f_atom(AtomKind::Base, "B", {V("u")})}));
  CHECK(simplify_formula(h) == f_atom(AtomKind::Base, "B", {K("a")}));
}

TEST_CASE("simplification preserves equivalence on the corpus shapes") {
  std::vector<PredicateExpression> shapes = {
      pe({"u"}, f_or({f_bot(), f_eq(V("u"), K("a"))})),
      pe({"u"}, f_and({f_top(), f_atom(AtomKind::Base, "B", {V("u")})})),
      pe({"u"}, f_forall("v", f_or({f_not(f_eq(V("v"), K("a"))),
                                    f_atom(AtomKind::Base, "B", {V("u"), V("v")})}))),
      pe({"u"}, f_not(f_not(f_exists("v", f_atom(AtomKind::Base, "B", {V("u"), V("v")}))))),
  };
  for (size_t i = 0; i < shapes.size(); ++i) {
    CAPTURE(i);
    auto eq = predicate_expressions_equivalent(shapes[i], simplify(shapes[i]), 3);
    REQUIRE(eq.ok());
    CHECK(*eq);
  }
}

TEST_CASE("transform rows of the worked example") {
  ProblemFile p = load_problem("example1.p");
  Signature sig = p.signature;
  TransformOptions opt;

  Witness w_param;
  w_param.components = {pe({"u"}, f_atom(AtomKind::Base, "W1", {V("u")}))};

  // ExtPurDel_X^- sets the component to bot.
  DerivationStep ext = make_ext_pur_del_step("X", '-', {3, 4});
  Witness w2 = transform(ext, p.clauses, w_param, sig, opt);
  CHECK(w2.components[0].body == f_bot());

  // PurDel(2.1) over bot simplifies to u = a.
  DerivationStep pd = make_pur_del_step({2, 0});
  Witness w1 = transform(pd, p.clauses, w2, sig, opt);
  CHECK(w1.components[0].body == f_eq(V("u"), K("a")));

  // Res leaves the witness unchanged.
  DerivationStep res = make_res_step({2, 0}, {4, 0}, 5);
  Witness w0 = transform(res, p.clauses, w1, sig, opt);
  CHECK(w0.components[0] == w1.components[0]);
}

TEST_CASE("witness extraction on the worked derivation") {
  ProblemFile p = load_problem("example1.p");
  Derivation d = example1_derivation(p);
  Signature sig = p.signature;
  auto trace = extract_witness(d, sig);
  REQUIRE(trace.ok());
  REQUIRE(trace->final.components.size() == 1);
  CHECK(trace->final.components[0].body == f_eq(V("u"), K("a")));
  CHECK(trace->final.first_order());
  CHECK_FALSE(trace->final.truncated());
  CHECK(witness_to_text(trace->final) == "λu. u = a");

  // Intermediate witnesses follow the published table.
  REQUIRE(trace->per_step.size() == 4);
  CHECK(trace->per_step[3].components[0].body ==
        f_atom(AtomKind::Base, "W1", {V("u")}));
  CHECK(trace->per_step[2].components[0].body == f_bot());
  CHECK(trace->per_step[1].components[0].body == f_eq(V("u"), K("a")));

  // The annotation records res^p of the purified clause.
  REQUIRE(trace->annotation_used.count(2));
  const PredicateExpression& rp = trace->annotation_used.at(2);
  CHECK(rp.body == f_or({f_atom(AtomKind::PredVar, "X", {V("u")}), f_eq(K("a"), V("u"))}));

  // And the full WSOQE condition holds at the default bound.
  auto rep = check_wsoqe(p.clauses, p.signature.predicate_variables(),
                         instantiate_witness_params(trace->final, true), 3);
  REQUIRE(rep.ok());
  CHECK(rep->verified);
}

TEST_CASE("witness extraction rejects non-eliminating derivations") {
  ProblemFile p = load_problem("example1.p");
  Derivation d(p.clauses);
  Signature sig = p.signature;
  CHECK_FALSE(extract_witness(d, sig).ok());
}

TEST_CASE("the skolem-constant example yields u = a") {
  ProblemFile p = load_problem("skolem.p");
  Derivation d(p.clauses);
  REQUIRE(d.push(make_res_step({1, 0}, {2, 0}, 3)).ok());
  REQUIRE(d.push(make_pur_del_step({1, 0})).ok());
  REQUIRE(d.push(make_ext_pur_del_step("X", '-', {2})).ok());
  REQUIRE(d.conclusion().size() == 1);
  CHECK(d.conclusion().at(3).literals ==
        std::vector<Literal>{Literal::equality(false, K("a"), K("b"))});
  Signature sig = p.signature;
  auto trace = extract_witness(d, sig);
  REQUIRE(trace.ok());
  CHECK(trace->final.components[0].body == f_eq(V("u"), K("a")));
}

TEST_CASE("two-variable extraction follows the published table") {
  ProblemFile p = load_problem("g3.p");
  Derivation d(p.clauses);
  REQUIRE(d.push(make_pur_del_step({1, 0})).ok());
  REQUIRE(d.push(make_res_step({2, 1}, {3, 0}, 4)).ok());
  REQUIRE(d.push(make_constr_elim_step(4, {0}, 5)).ok());
  REQUIRE(d.push(make_red_elim_step(4, {RedundancyReason::Kind::ElimSubsumedBy, 5})).ok());
  REQUIRE(d.push(make_pur_del_step({2, 1})).ok());
  REQUIRE(d.push(make_ext_pur_del_step("X2", '-', {3})).ok());
  REQUIRE(d.conclusion().size() == 1);

  Signature sig = p.signature;
  auto trace = extract_witness(d, sig);
  REQUIRE(trace.ok());
  REQUIRE(trace->final.components.size() == 2);
  CHECK(witness_to_text(trace->final) == "(λu. W1(u) ∧ A(u), λu. A(u))");

  // Oracle equivalence under both instantiations of the parameter.
  Witness expected;
  expected.components = {pe({"u"}, f_and({f_atom(AtomKind::Base, "W1", {V("u")}),
                                          f_atom(AtomKind::Base, "A", {V("u")})})),
                         pe({"u"}, f_atom(AtomKind::Base, "A", {V("u")}))};
  for (bool top : {true, false}) {
    Witness got = instantiate_witness_params(trace->final, top);
    Witness want = instantiate_witness_params(expected, top);
    for (size_t i = 0; i < 2; ++i) {
      auto eq = predicate_expressions_equivalent(got.components[i], want.components[i], 3);
      REQUIRE(eq.ok());
      CHECK(*eq);
    }
    auto rep = check_wsoqe(p.clauses, p.signature.predicate_variables(), got, 3);
    REQUIRE(rep.ok());
    CHECK(rep->verified);
  }
}

TEST_CASE("size family satisfies the recurrence and closed form") {
  for (int p = 1; p <= 6; ++p) {
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(p);
      CAPTURE(n);
      Signature sig;
      auto fam = generate_size_family(p, n, sig);
      REQUIRE(fam.ok());
      TransformOptions opt;
      opt.apply_simplification = false;
      auto trace = extract_witness(fam->second, sig, opt);
      REQUIRE(trace.ok());

      // w_p = 2 and w_{i-1} = n * w_i + n + 2 along the PurDel chain.
      std::vector<std::uint64_t> sizes;
      for (const Witness& w : trace->per_step) {
        Size s = size_of(w.components[0]);
        REQUIRE(s.has_value());
        sizes.push_back(*s);
      }
      CHECK(sizes.back() == 2);
      for (size_t i = sizes.size() - 1; i > 0; --i)
        CHECK(sizes[i - 1] == static_cast<std::uint64_t>(n) * sizes[i] +
                                  static_cast<std::uint64_t>(n) + 2);

      std::uint64_t closed = 2 * ipow(n, p);
      for (int j = 0; j < p; ++j)
        closed += static_cast<std::uint64_t>(n + 2) * ipow(n, p - j - 1);
      CHECK(sizes.front() == closed);
      if (n == 1) CHECK(sizes.front() == static_cast<std::uint64_t>(2 + 3 * p));
    }
  }
}

TEST_CASE("ackermann witness on the worked shapes") {
  SUBCASE("the introduction example") {
    ProblemFile p = load_problem("g2.p");
    auto w = ackermann_witness(p.clauses, "X", p.signature);
    REQUIRE(w.has_value());
    CHECK(w->params == std::vector<std::string>{"u"});
    CHECK(w->body == f_atom(AtomKind::Base, "B", {V("u")}));
  }
  SUBCASE("the chained two-variable set for X2") {
    ProblemFile p = prob("vars: X2/1\nclause: -A(u) | X2(u)\nclause: -X2(u) | B(u)\n");
    auto w = ackermann_witness(p.clauses, "X2", p.signature);
    REQUIRE(w.has_value());
    CHECK(w->body == f_atom(AtomKind::Base, "B", {V("u")}));
    Witness witness;
    witness.components = {*w};
    auto rep = check_wsoqe(p.clauses, p.signature.predicate_variables(), witness, 3);
    REQUIRE(rep.ok());
    CHECK(rep->verified);
  }
  SUBCASE("the main example is not Ackermann-shaped") {
    ProblemFile p = load_problem("example1.p");
    CHECK_FALSE(ackermann_witness(p.clauses, "X", p.signature).has_value());
  }
  SUBCASE("the dual pattern negates the remainder") {
    ProblemFile p = prob("vars: X/1\nclause: X(u) | B(u)\nclause: -X(a)\n");
    auto w = ackermann_witness(p.clauses, "X", p.signature);
    REQUIRE(w.has_value());
    CHECK(w->body == f_not(f_atom(AtomKind::Base, "B", {V("u")})));
  }
}

TEST_CASE("the ackermann derivation reproduces the ackermann witness") {
  ProblemFile p = load_problem("g2.p");
  SaturationConfig cfg;
  auto d = ackermann_derivation(p.clauses, "X", p.signature, cfg);
  REQUIRE(d.ok());
  CHECK(d->is_one_sided());
  Signature sig = p.signature;
  auto trace = extract_witness(*d, sig);
  REQUIRE(trace.ok());
  auto aw = ackermann_witness(p.clauses, "X", p.signature);
  REQUIRE(aw.has_value());
  auto eq = predicate_expressions_equivalent(
      instantiate_params(trace->final.components[0], true), *aw, 2);
  REQUIRE(eq.ok());
  CHECK(*eq);
}
