#include "wscan/render.hpp"

#include <sstream>

namespace wscan {

namespace {

bool atomic_for_text(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
    case FormulaKind::Truncated:
    case FormulaKind::Not:
      return true;
    default:
      return false;
  }
}

std::string atom_text(const Formula& f) {
  if (f.atom == AtomKind::Equality)
    return term_to_string(f.args[0]) + " = " + term_to_string(f.args[1]);
  std::string s = f.name;
  if (!f.args.empty()) {
    s += "(";
    for (size_t i = 0; i < f.args.size(); ++i) {
      if (i) s += ",";
      s += term_to_string(f.args[i]);
    }
    s += ")";
  }
  return s;
}

std::string text_rec(const Formula& f, bool parenthesize_connective) {
  switch (f.kind) {
    case FormulaKind::Top:
      return "⊤";
    case FormulaKind::Bot:
      return "⊥";
    case FormulaKind::Truncated:
      return "…";
    case FormulaKind::Atom:
      return atom_text(f);
    case FormulaKind::Not: {
      const Formula& c = f.children[0];
      if (c.kind == FormulaKind::Atom && c.atom == AtomKind::Equality)
        return term_to_string(c.args[0]) + " ≠ " + term_to_string(c.args[1]);
      return "¬" + text_rec(c, true);
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      const char* op = f.kind == FormulaKind::And ? " ∧ " : " ∨ ";
      std::string s;
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) s += op;
        s += text_rec(f.children[i], true);
      }
      return parenthesize_connective ? "(" + s + ")" : s;
    }
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      std::string s = text_rec(f.children[0], true) +
                      (f.kind == FormulaKind::Implies ? " → " : " ↔ ") +
                      text_rec(f.children[1], true);
      return parenthesize_connective ? "(" + s + ")" : s;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::Forall2:
    case FormulaKind::Exists2: {
      bool universal = f.kind == FormulaKind::Forall || f.kind == FormulaKind::Forall2;
      std::string s = (universal ? "∀" : "∃") + f.name;
      const Formula& body = f.children[0];
      if (atomic_for_text(body) || body.kind == FormulaKind::Forall ||
          body.kind == FormulaKind::Exists)
        s += " " + text_rec(body, true);
      else
        s += "(" + text_rec(body, false) + ")";
      return parenthesize_connective ? s : s;
    }
  }
  return "?";
}

}  // namespace

std::string formula_to_text(const Formula& f) { return text_rec(f, false); }

std::string predicate_expression_to_text(const PredicateExpression& e) {
  std::string s = "λ";
  if (e.params.empty()) s += "()";
  for (size_t i = 0; i < e.params.size(); ++i) {
    if (i) s += " λ";
    s += e.params[i];
  }
  s += ". " + formula_to_text(e.body);
  return s;
}

std::string witness_to_text(const Witness& w) {
  if (w.components.size() == 1) return predicate_expression_to_text(w.components[0]);
  std::string s = "(";
  for (size_t i = 0; i < w.components.size(); ++i) {
    if (i) s += ", ";
    s += predicate_expression_to_text(w.components[i]);
  }
  return s + ")";
}

std::string clause_set_to_text(const ClauseSet& n) {
  std::string s = "{";
  bool first = true;
  for (const auto& [id, c] : n.clauses()) {
    if (!first) s += ", ";
    first = false;
    s += "(" + std::to_string(id) + ") " + clause_to_string(c);
  }
  return s + "}";
}

std::string derivation_to_text(const Derivation& d) {
  std::ostringstream os;
  os << "initial: " << clause_set_to_text(d.initial()) << "\n";
  for (size_t i = 0; i < d.length(); ++i) {
    os << "  " << (i + 1) << ". " << step_to_string(d.steps()[i], d.states()[i]);
    const DerivationStep& s = d.steps()[i];
    if (s.kind == StepKind::Res || s.kind == StepKind::Fac || s.kind == StepKind::ConstrElim) {
      const Clause* added = d.states()[i + 1].find(s.result_id);
      if (added) os << "   adds " << clause_to_string(*added);
    }
    os << "\n";
  }
  os << "conclusion: " << clause_set_to_text(d.conclusion()) << "\n";
  return os.str();
}

Json term_to_json(const Term& t) {
  switch (t.kind) {
    case TermKind::Variable:
      return Json{{"var", t.name}};
    case TermKind::Constant:
      return Json{{"const", t.name}};
    case TermKind::Application: {
      Json args = Json::array();
      for (const Term& a : t.args) args.push_back(term_to_json(a));
      return Json{{"fn", t.name}, {"args", args}};
    }
  }
  return {};
}

Expected<Term> term_from_json(const Json& j) {
  if (j.contains("var")) return Term::var(j["var"].get<std::string>());
  if (j.contains("const")) return Term::constant(j["const"].get<std::string>());
  if (j.contains("fn")) {
    std::vector<Term> args;
    for (const Json& a : j["args"]) {
      auto t = term_from_json(a);
      if (!t) return t;
      args.push_back(*t);
    }
    return Term::app(j["fn"].get<std::string>(), std::move(args));
  }
  return Expected<Term>::fail("bad term JSON: " + j.dump());
}

Json formula_to_json(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Top:
      return Json{{"kind", "top"}};
    case FormulaKind::Bot:
      return Json{{"kind", "bot"}};
    case FormulaKind::Truncated:
      return Json{{"kind", "truncated"}};
    case FormulaKind::Atom: {
      if (f.atom == AtomKind::Equality)
        return Json{{"kind", "eq"},
                    {"lhs", term_to_json(f.args[0])},
                    {"rhs", term_to_json(f.args[1])}};
      Json args = Json::array();
      for (const Term& a : f.args) args.push_back(term_to_json(a));
      return Json{{"kind", "pred"},
                  {"name", f.name},
                  {"pred_var", f.atom == AtomKind::PredVar},
                  {"args", args}};
    }
    case FormulaKind::Not:
      return Json{{"kind", "not"}, {"arg", formula_to_json(f.children[0])}};
    case FormulaKind::And:
    case FormulaKind::Or: {
      Json args = Json::array();
      for (const Formula& ch : f.children) args.push_back(formula_to_json(ch));
      return Json{{"kind", f.kind == FormulaKind::And ? "and" : "or"}, {"args", args}};
    }
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return Json{{"kind", f.kind == FormulaKind::Implies ? "implies" : "iff"},
                  {"lhs", formula_to_json(f.children[0])},
                  {"rhs", formula_to_json(f.children[1])}};
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return Json{{"kind", f.kind == FormulaKind::Forall ? "forall" : "exists"},
                  {"var", f.name},
                  {"body", formula_to_json(f.children[0])}};
    case FormulaKind::Forall2:
    case FormulaKind::Exists2:
      return Json{{"kind", f.kind == FormulaKind::Forall2 ? "forall2" : "exists2"},
                  {"var", f.name},
                  {"arity", f.arity},
                  {"body", formula_to_json(f.children[0])}};
  }
  return {};
}

Expected<Formula> formula_from_json(const Json& j) {
  std::string k = j.value("kind", "");
  if (k == "top") return f_top();
  if (k == "bot") return f_bot();
  if (k == "truncated") return f_truncated();
  if (k == "eq") {
    auto l = term_from_json(j.at("lhs"));
    if (!l) return Expected<Formula>::fail(l.error());
    auto r = term_from_json(j.at("rhs"));
    if (!r) return Expected<Formula>::fail(r.error());
    return f_eq(*l, *r);
  }
  if (k == "pred") {
    std::vector<Term> args;
    for (const Json& a : j.at("args")) {
      auto t = term_from_json(a);
      if (!t) return Expected<Formula>::fail(t.error());
      args.push_back(*t);
    }
    return f_atom(j.value("pred_var", false) ? AtomKind::PredVar : AtomKind::Base,
                  j.at("name").get<std::string>(), std::move(args));
  }
  if (k == "not") {
    auto a = formula_from_json(j.at("arg"));
    if (!a) return a;
    return f_not(std::move(*a));
  }
  if (k == "and" || k == "or") {
    std::vector<Formula> fs;
    for (const Json& a : j.at("args")) {
      auto f = formula_from_json(a);
      if (!f) return f;
      fs.push_back(std::move(*f));
    }
    return k == "and" ? f_and(std::move(fs)) : f_or(std::move(fs));
  }
  if (k == "implies" || k == "iff") {
    auto l = formula_from_json(j.at("lhs"));
    if (!l) return l;
    auto r = formula_from_json(j.at("rhs"));
    if (!r) return r;
    return k == "implies" ? f_implies(std::move(*l), std::move(*r))
                          : f_iff(std::move(*l), std::move(*r));
  }
  if (k == "forall" || k == "exists") {
    auto b = formula_from_json(j.at("body"));
    if (!b) return b;
    return k == "forall" ? f_forall(j.at("var").get<std::string>(), std::move(*b))
                         : f_exists(j.at("var").get<std::string>(), std::move(*b));
  }
  if (k == "forall2" || k == "exists2") {
    auto b = formula_from_json(j.at("body"));
    if (!b) return b;
    return k == "forall2"
               ? f_forall2(j.at("var").get<std::string>(), j.at("arity").get<int>(),
                           std::move(*b))
               : f_exists2(j.at("var").get<std::string>(), j.at("arity").get<int>(),
                           std::move(*b));
  }
  return Expected<Formula>::fail("bad formula JSON: " + j.dump());
}

Json literal_to_json(const Literal& l) {
  if (l.is_equality())
    return Json{{"kind", "eq"},
                {"positive", l.positive},
                {"lhs", term_to_json(l.args[0])},
                {"rhs", term_to_json(l.args[1])}};
  Json args = Json::array();
  for (const Term& a : l.args) args.push_back(term_to_json(a));
  return Json{{"kind", l.is_pred_var() ? "pred_var" : "base"},
              {"positive", l.positive},
              {"name", l.pred},
              {"args", args}};
}

Expected<Literal> literal_from_json(const Json& j) {
  std::string k = j.value("kind", "");
  bool pos = j.value("positive", true);
  if (k == "eq") {
    auto l = term_from_json(j.at("lhs"));
    if (!l) return Expected<Literal>::fail(l.error());
    auto r = term_from_json(j.at("rhs"));
    if (!r) return Expected<Literal>::fail(r.error());
    return Literal::equality(pos, *l, *r);
  }
  if (k == "pred_var" || k == "base") {
    std::vector<Term> args;
    for (const Json& a : j.at("args")) {
      auto t = term_from_json(a);
      if (!t) return Expected<Literal>::fail(t.error());
      args.push_back(*t);
    }
    return k == "pred_var"
               ? Literal::pred_var(pos, j.at("name").get<std::string>(), std::move(args))
               : Literal::base(pos, j.at("name").get<std::string>(), std::move(args));
  }
  return Expected<Literal>::fail("bad literal JSON: " + j.dump());
}

Json clause_to_json(const Clause& c) {
  Json lits = Json::array();
  for (const Literal& l : c.literals) lits.push_back(literal_to_json(l));
  return Json{{"id", c.id}, {"literals", lits}, {"text", clause_to_string(c)}};
}

Expected<Clause> clause_from_json(const Json& j) {
  Clause c;
  c.id = j.value("id", 0);
  for (const Json& l : j.at("literals")) {
    auto lit = literal_from_json(l);
    if (!lit) return Expected<Clause>::fail(lit.error());
    c.literals.push_back(*lit);
  }
  return c;
}

Json clause_set_to_json(const ClauseSet& n) {
  Json arr = Json::array();
  for (const auto& [id, c] : n.clauses()) {
    (void)id;
    arr.push_back(clause_to_json(c));
  }
  return Json{{"clauses", arr}, {"next_id", n.next_id()}};
}

Expected<ClauseSet> clause_set_from_json(const Json& j) {
  ClauseSet n;
  for (const Json& cj : j.at("clauses")) {
    auto c = clause_from_json(cj);
    if (!c) return Expected<ClauseSet>::fail(c.error());
    n.add(std::move(*c));
  }
  return n;
}

namespace {

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Res: return "res";
    case StepKind::Fac: return "fac";
    case StepKind::ConstrElim: return "constr_elim";
    case StepKind::RedElim: return "red_elim";
    case StepKind::ExtPurDel: return "ext_pur_del";
    case StepKind::PurDel: return "pur_del";
  }
  return "?";
}

const char* reason_name(RedundancyReason::Kind k) {
  switch (k) {
    case RedundancyReason::Kind::Tautology: return "tautology";
    case RedundancyReason::Kind::SubsumedBy: return "subsumed_by";
    case RedundancyReason::Kind::ElimSubsumedBy: return "elim_subsumed_by";
    case RedundancyReason::Kind::CondensedTo: return "condensed_to";
    default: return "none";
  }
}

}  // namespace

Json step_to_json(const DerivationStep& s) {
  Json j{{"kind", step_kind_name(s.kind)}};
  switch (s.kind) {
    case StepKind::Res:
      j["p1"] = {{"clause", s.p1.clause_id}, {"literal", s.p1.lit_index}};
      j["p2"] = {{"clause", s.p2.clause_id}, {"literal", s.p2.lit_index}};
      j["result"] = s.result_id;
      break;
    case StepKind::Fac:
    case StepKind::ConstrElim:
      j["premise"] = s.premise_id;
      j["indices"] = s.indices;
      j["result"] = s.result_id;
      break;
    case StepKind::RedElim:
      j["removed"] = s.removed_id;
      j["reason"] = reason_name(s.reason.kind);
      if (s.reason.by_id) j["by"] = s.reason.by_id;
      if (s.reason.kind == RedundancyReason::Kind::CondensedTo) j["result"] = s.result_id;
      break;
    case StepKind::ExtPurDel:
      j["var"] = s.pred_var;
      j["polarity"] = std::string(1, s.polarity);
      j["removed"] = s.removed_ids;
      break;
    case StepKind::PurDel:
      j["pointed"] = {{"clause", s.p1.clause_id}, {"literal", s.p1.lit_index}};
      break;
  }
  return j;
}

Expected<DerivationStep> step_from_json(const Json& j) {
  std::string k = j.value("kind", "");
  if (k == "res")
    return make_res_step({j.at("p1").at("clause"), j.at("p1").at("literal")},
                         {j.at("p2").at("clause"), j.at("p2").at("literal")},
                         j.at("result"));
  if (k == "fac") {
    std::vector<int> idx = j.at("indices").get<std::vector<int>>();
    if (idx.size() != 2) return Expected<DerivationStep>::fail("fac needs two indices");
    return make_fac_step(j.at("premise"), idx[0], idx[1], j.at("result"));
  }
  if (k == "constr_elim")
    return make_constr_elim_step(j.at("premise"), j.at("indices").get<std::vector<int>>(),
                                 j.at("result"));
  if (k == "red_elim") {
    std::string rn = j.value("reason", "");
    RedundancyReason r;
    if (rn == "tautology") r.kind = RedundancyReason::Kind::Tautology;
    else if (rn == "subsumed_by") r.kind = RedundancyReason::Kind::SubsumedBy;
    else if (rn == "elim_subsumed_by") r.kind = RedundancyReason::Kind::ElimSubsumedBy;
    else if (rn == "condensed_to") r.kind = RedundancyReason::Kind::CondensedTo;
    else return Expected<DerivationStep>::fail("bad redundancy reason: " + rn);
    r.by_id = j.value("by", 0);
    return make_red_elim_step(j.at("removed"), r, j.value("result", 0));
  }
  if (k == "ext_pur_del")
    return make_ext_pur_del_step(j.at("var"), j.at("polarity").get<std::string>()[0],
                                 j.at("removed").get<std::vector<int>>());
  if (k == "pur_del")
    return make_pur_del_step({j.at("pointed").at("clause"), j.at("pointed").at("literal")});
  return Expected<DerivationStep>::fail("bad step JSON: " + j.dump());
}

Json witness_to_json(const Witness& w, const PredVars& xs) {
  Json arr = Json::array();
  for (size_t i = 0; i < w.components.size(); ++i) {
    const PredicateExpression& e = w.components[i];
    Json entry{{"var", i < xs.size() ? xs[i].first : "X" + std::to_string(i + 1)},
               {"params", e.params},
               {"body", formula_to_json(e.body)}};
    arr.push_back(std::move(entry));
  }
  return Json{{"witness", arr},
              {"first_order", w.first_order()},
              {"truncated", w.truncated()}};
}

Expected<Witness> witness_from_json(const Json& j) {
  Witness w;
  const Json& arr = j.contains("witness") ? j.at("witness") : j;
  if (!arr.is_array()) return Expected<Witness>::fail("witness JSON must hold an array");
  for (const Json& e : arr) {
    PredicateExpression pe;
    pe.params = e.at("params").get<std::vector<std::string>>();
    auto b = formula_from_json(e.at("body"));
    if (!b) return Expected<Witness>::fail(b.error());
    pe.body = std::move(*b);
    pe.truncated = formula_contains_truncation(pe.body);
    pe.first_order = !pe.truncated;
    w.components.push_back(std::move(pe));
  }
  return w;
}

Json report_to_json(const CheckReport& r) {
  Json j{{"verified", r.verified},
         {"up_to", r.up_to},
         {"structures_checked", r.structures_checked},
         {"cap", r.cap},
         {"capped", r.capped},
         {"elapsed_seconds", r.elapsed_seconds},
         {"note", "bounded-domain check; validity beyond the bound is not decided"}};
  if (r.counterexample) j["counterexample"] = r.counterexample->to_string();
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

namespace {

std::uint64_t term_symbols(const Term& t) {
  std::uint64_t n = t.kind == TermKind::Variable ? 0 : 1;
  for (const Term& a : t.args) n += term_symbols(a);
  return n;
}

}  // namespace

std::uint64_t input_size(const Clause& c) {
  std::uint64_t n = 0;
  for (const Literal& l : c.literals) {
    if (!l.is_equality()) ++n;  // the predicate symbol itself
    for (const Term& t : l.args) n += term_symbols(t);
  }
  return n;
}

std::uint64_t input_size(const ClauseSet& n) {
  std::uint64_t s = 0;
  for (const auto& [id, c] : n.clauses()) {
    (void)id;
    s += input_size(c);
  }
  return s;
}

Json RunResult::to_json() const {
  Json steps = Json::array();
  for (size_t i = 0; i < derivation.length(); ++i) {
    Json sj = step_to_json(derivation.steps()[i]);
    sj["text"] = step_to_string(derivation.steps()[i], derivation.states()[i]);
    steps.push_back(std::move(sj));
  }
  Json j{{"problem", render_problem(problem)},
         {"status", status},
         {"derivation",
          Json{{"initial", clause_set_to_json(derivation.initial())},
               {"steps", steps},
               {"conclusion", clause_set_to_json(derivation.conclusion())}}},
         {"one_sided", derivation_one_sided},
         {"metrics", Json{{"input_size", input_size_metric},
                          {"steps", derivation.length()},
                          {"elapsed_seconds", elapsed_seconds}}}};
  if (!detail.empty()) j["detail"] = detail;
  if (witness_size_metric)
    j["metrics"]["witness_size"] = *witness_size_metric;
  else if (has_witness)
    j["metrics"]["witness_size"] = "infinite";
  if (has_witness) {
    Json wj = witness_to_json(witness, problem.signature.predicate_variables());
    j["witness"] = wj["witness"];
    j["first_order"] = wj["first_order"];
    j["truncated"] = wj["truncated"];
    j["witness_text"] = witness_to_text(witness);
  }
  if (wsoqe_report) j["verification"] = report_to_json(*wsoqe_report);
  return j;
}

Expected<RunResult> RunResult::from_json(const Json& j) {
  RunResult r;
  auto prob = parse_problem(j.at("problem").get<std::string>());
  if (!prob) return Expected<RunResult>::fail(prob.error());
  r.problem = std::move(*prob);
  r.status = j.value("status", "");
  r.detail = j.value("detail", "");
  auto initial = clause_set_from_json(j.at("derivation").at("initial"));
  if (!initial) return Expected<RunResult>::fail(initial.error());
  std::vector<DerivationStep> steps;
  for (const Json& sj : j.at("derivation").at("steps")) {
    auto s = step_from_json(sj);
    if (!s) return Expected<RunResult>::fail(s.error());
    steps.push_back(*s);
  }
  auto d = Derivation::replay(std::move(*initial), std::move(steps));
  if (!d) return Expected<RunResult>::fail(d.error());
  r.derivation = std::move(*d);
  r.derivation_one_sided = j.value("one_sided", false);
  if (j.contains("witness")) {
    auto w = witness_from_json(j);
    if (!w) return Expected<RunResult>::fail(w.error());
    r.witness = std::move(*w);
    r.has_witness = true;
  }
  if (j.contains("metrics")) {
    r.input_size_metric = j["metrics"].value("input_size", 0ull);
    if (j["metrics"].contains("witness_size") && j["metrics"]["witness_size"].is_number())
      r.witness_size_metric = j["metrics"]["witness_size"].get<std::uint64_t>();
    r.elapsed_seconds = j["metrics"].value("elapsed_seconds", 0.0);
  }
  return r;
}

std::string RunResult::to_text() const {
  std::ostringstream os;
  os << derivation_to_text(derivation);
  os << "status: " << status;
  if (!detail.empty()) os << " (" << detail << ")";
  os << "\n";
  if (has_witness) {
    os << "witness: " << witness_to_text(witness) << "\n";
    os << "flags: " << (derivation_one_sided ? "one-sided" : "not one-sided") << ", "
       << (witness.first_order() ? "first-order" : "not first-order")
       << (witness.truncated() ? ", truncated" : "") << "\n";
  }
  os << "input_size: " << input_size_metric;
  if (witness_size_metric)
    os << ", witness_size: " << *witness_size_metric;
  else if (has_witness)
    os << ", witness_size: infinite";
  os << "\n";
  if (wsoqe_report) {
    const CheckReport& r = *wsoqe_report;
    if (r.verified)
      os << "verification: verified-up-to(" << r.up_to << "), " << r.structures_checked
         << " structures\n";
    else
      os << "verification: counterexample at domain size " << r.up_to << ": "
         << (r.counterexample ? r.counterexample->to_string() : "") << " (" << r.detail
         << ")\n";
  }
  return os.str();
}

}  // namespace wscan
