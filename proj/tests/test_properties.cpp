#include <doctest.h>

#include "fuzz.hpp"
#include "helpers.hpp"
#include "wscan/closure.hpp"
#include "wscan/saturation.hpp"
#include "wscan/verifier.hpp"
#include "wscan/witness.hpp"

using namespace wscan;
using namespace wscan::test;

TEST_CASE("fuzzed saturations stay sound, equivalence-preserving and witnessed") {
  std::mt19937 rng(20240601);
  SaturationConfig cfg;
  cfg.max_steps = 60;
  cfg.max_purification_resolvents = 24;
  int eliminated = 0, witnessed = 0;
  for (int round = 0; round < 60; ++round) {
    CAPTURE(round);
    FuzzProblem p = random_problem(rng);
    SaturateResult sat = saturate(p.clauses, p.signature, cfg);
    if (sat.status != SaturateResult::Status::Eliminated) continue;
    ++eliminated;
    const Derivation& d = sat.derivation;
    const PredVars& xs = p.signature.predicate_variables();

    for (size_t i = 0; i < d.length(); ++i) {
      CheckReport rep = check_step(d.states()[i], d.states()[i + 1], xs, 2);
      REQUIRE_MESSAGE(rep.verified,
                      "step " << (i + 1) << " ("
                              << step_to_string(d.steps()[i], d.states()[i])
                              << "): " << rep.detail);
    }

    Signature sig = p.signature;
    auto trace = extract_witness(d, sig);
    REQUIRE(trace.ok());
    if (!trace->final.first_order()) continue;
    ++witnessed;
    Witness w = instantiate_witness_params(trace->final, true);
    auto rep = check_wsoqe(p.clauses, xs, w, 2);
    REQUIRE_MESSAGE(rep.ok(), rep.error());
    CHECK_MESSAGE(rep->verified, rep->detail);
  }
  CHECK(eliminated > 10);
  CHECK(witnessed > 5);
}

TEST_CASE("redundancy implies entailment in small structures") {
  std::mt19937 rng(99);
  int hits = 0;
  for (int round = 0; round < 150; ++round) {
    FuzzProblem p = random_problem(rng);
    Clause c = random_fuzz_clause(rng, p);
    auto why = redundant_in(c, p.clauses);
    if (!why) continue;
    ++hits;
    // |= N -> c over every structure of size <= 2 with the predicate
    // variables read as ordinary predicates.
    ClauseSet with_c = p.clauses;
    Clause copy = c;
    copy.id = 0;
    with_c.add(copy);
    CheckReport rep = check_step(p.clauses, with_c, {}, 2);
    CHECK_MESSAGE(rep.verified, "redundant clause not entailed: " << clause_to_string(c));
  }
  CHECK(hits > 5);
}

TEST_CASE("closure predicate satisfies the substitution property on fuzzed one-sided clauses") {
  std::mt19937 rng(7777);
  int tested = 0;
  for (int round = 0; round < 120 && tested < 40; ++round) {
    FuzzProblem p = random_problem(rng);
    for (const auto& [id, c] : p.clauses.clauses()) {
      (void)id;
      for (size_t i = 0; i < c.literals.size(); ++i) {
        if (!c.literals[i].is_pred_var()) continue;
        PointedClause pc{c, static_cast<int>(i)};
        if (!one_sided(pc)) continue;
        ++tested;
        Signature sig = p.signature;
        UnitClosure u = unit_closure(pc, sig, 16);
        REQUIRE(u.complete);
        // One-sided: seed plus single resolvent before canonicalization.
        CHECK(u.raw_clauses.size() == 2);

        PredicateExpression rp = res_predicate(u);
        std::map<std::string, PredicateExpression> map{{pc.literal().pred, rp}};
        Formula sub = substitute_pred_vars(clause_formula(pc.clause), map);
        std::set<std::string> vars = pc.clause.variables();
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) sub = f_forall(*it, sub);

        std::set<std::string> consts;
        std::map<std::string, int> funcs, preds, pvars;
        collect_formula_symbols(sub, consts, funcs, preds, pvars);
        SymbolTable syms;
        syms.constants.assign(consts.begin(), consts.end());
        for (auto& [n, a] : preds) syms.predicates.emplace_back(n, a);
        for (auto& [n, a] : pvars) syms.predicates.emplace_back(n, a);
        StructureEnumerator en(syms, 2);
        FiniteStructure m;
        Env env;
        while (en.next(m)) {
          auto r = eval_formula(sub, m, env);
          REQUIRE_MESSAGE(r.ok(), r.error());
          CHECK_MESSAGE(*r, "P[X <- res_p] failed for " << clause_to_string(pc.clause)
                                                        << " in " << m.to_string());
        }
      }
    }
  }
  CHECK(tested >= 40);
}

TEST_CASE("closure duality on fuzzed one-sided clauses") {
  std::mt19937 rng(31337);
  int tested = 0;
  for (int round = 0; round < 80 && tested < 25; ++round) {
    FuzzProblem p = random_problem(rng);
    for (const auto& [id, c] : p.clauses.clauses()) {
      (void)id;
      for (size_t i = 0; i < c.literals.size(); ++i) {
        if (!c.literals[i].is_pred_var()) continue;
        PointedClause pc{c, static_cast<int>(i)};
        if (!one_sided(pc)) continue;
        ++tested;
        PointedClause dualized = pc;
        const std::string x = pc.literal().pred;
        for (Literal& l : dualized.clause.literals)
          if (l.is_pred_var() && l.pred == x) l = l.dual();
        Signature s1 = p.signature, s2 = p.signature;
        UnitClosure u1 = unit_closure(pc, s1, 16);
        UnitClosure u2 = unit_closure(dualized, s2, 16);
        REQUIRE(u1.complete);
        REQUIRE(u2.complete);
        REQUIRE(u1.clauses.size() == u2.clauses.size());
        for (size_t k = 0; k < u1.clauses.size(); ++k) {
          Clause flipped = u1.clauses[k];
          for (Literal& l : flipped.literals)
            if (l.is_pred_var() && l.pred == x) l = l.dual();
          std::map<std::string, Term> ren;
          for (size_t j = 0; j < u1.fresh_constants.size(); ++j)
            ren[u1.fresh_constants[j]] = Term::constant(u2.fresh_constants[j]);
          flipped = replace_constants(flipped, ren);
          CHECK(variant_clauses(flipped, u2.clauses[k]));
        }
      }
    }
  }
  CHECK(tested >= 25);
}

TEST_CASE("witness preservation along the worked derivation") {
  // exists X N(D)_i <=> N(D)_i [X <- wit_i] for every intermediate step.
  ProblemFile p = load_problem("example1.p");
  Derivation d(p.clauses);
  REQUIRE(d.push(make_res_step({2, 0}, {4, 0}, 5)).ok());
  REQUIRE(d.push(make_pur_del_step({2, 0})).ok());
  REQUIRE(d.push(make_ext_pur_del_step("X", '-', {3, 4})).ok());
  Signature sig = p.signature;
  auto trace = extract_witness(d, sig);
  REQUIRE(trace.ok());
  for (size_t i = 0; i < trace->per_step.size(); ++i) {
    CAPTURE(i);
    for (bool top : {true, false}) {
      Witness w = instantiate_witness_params(trace->per_step[i], top);
      auto rep = check_wsoqe(d.states()[i], p.signature.predicate_variables(), w, 2);
      REQUIRE_MESSAGE(rep.ok(), rep.error());
      CHECK_MESSAGE(rep->verified, "wit_" << i << " fails: " << rep->detail);
    }
  }
}
